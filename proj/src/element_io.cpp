#include "qdkit/element_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "qdkit/errors.hpp"

namespace qdkit {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

long parseLong(const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("not an integer: '" + s + "'");
  return v;
}

PAdicLaurent parseLaurent(const std::string& tok, std::uint32_t prime) {
  const auto colon = tok.find(':');
  mpz_class u;
  const std::string mant = tok.substr(0, colon);
  if (mant.empty() || u.set_str(mant, 10) != 0) throw ParseError("bad mantissa in '" + tok + "'");
  long k = 0;
  if (colon != std::string::npos) {
    k = parseLong(tok.substr(colon + 1));
    if (k < 0) throw ParseError("negative exponent in '" + tok + "'");
  }
  return PAdicLaurent(u, static_cast<std::uint32_t>(k), prime);
}

// Returns e with x = p^e, or throws.
long powerOfPrime(const PAdicLaurent& x) {
  if (x.expo() > 0) {
    if (x.mantissa() == 1) return -static_cast<long>(x.expo());
    throw ParseError("diagonal entry " + x.str() + " is not a power of p");
  }
  mpz_class u = x.mantissa();
  long e = 0;
  while (u > 1 && mpz_divisible_ui_p(u.get_mpz_t(), x.prime())) {
    mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), x.prime());
    ++e;
  }
  if (u != 1) throw ParseError("diagonal entry " + x.str() + " is not a power of p");
  return e;
}

}  // namespace

std::vector<std::string> readElementLines(std::istream& in) {
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    std::string content = trim(std::string_view(line).substr(0, hash));
    if (!content.empty()) out.push_back(std::move(content));
  }
  return out;
}

std::vector<std::string> readElementFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return readElementLines(in);
}

FreeWord parseFreeWord(std::string_view line) { return FreeWord::parse(trim(line)); }

AbelsElement parseAbelsElement(std::string_view line, std::uint32_t prime) {
  const auto t = tokens(line);
  if (t.size() != 16) throw ParseError("Abels element needs 16 entries, got " + std::to_string(t.size()));
  AbelsElement g(prime);
  long k = 0, n = 0;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const PAdicLaurent x = parseLaurent(t[(i - 1) * 4 + (j - 1)], prime);
      if (i > j) {
        if (!x.isZero()) throw ParseError("Abels element must be upper triangular");
      } else if (i == j) {
        const long e = powerOfPrime(x);
        if ((i == 1 || i == 4) && e != 0) throw ParseError("corner diagonal entries must be 1");
        if (i == 2) k = e;
        if (i == 3) n = e;
      } else {
        g.setOffDiagonal(i, j, x);
      }
    }
  }
  g.setDiagonalExponents(k, n);
  return g;
}

HeisenbergElement parseHeisenbergElement(std::string_view line) {
  const auto t = tokens(line);
  if (t.size() != 9) throw ParseError("Heisenberg element needs 9 entries");
  std::vector<long> v;
  for (const auto& s : t) v.push_back(parseLong(s));
  if (v[0] != 1 || v[4] != 1 || v[8] != 1 || v[3] != 0 || v[6] != 0 || v[7] != 0) {
    throw ParseError("not a unipotent upper-triangular 3x3 matrix");
  }
  return {v[1], v[5], v[2]};
}

std::string formatElement(const FreeWord& w) { return w.str(); }
std::string formatElement(const AbelsElement& g) { return g.str(); }
std::string formatElement(const HeisenbergElement& x) { return x.str(); }

}  // namespace qdkit
