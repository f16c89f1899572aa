#include "qdkit/abels.hpp"

#include <numeric>

#include "qdkit/errors.hpp"

namespace qdkit {

AbelsElement::AbelsElement(std::uint32_t prime)
    : prime_(prime),
      off_{PAdicLaurent(prime), PAdicLaurent(prime), PAdicLaurent(prime),
           PAdicLaurent(prime), PAdicLaurent(prime), PAdicLaurent(prime)} {
  if (prime < 2) throw PreconditionError("Abels' group needs a prime p >= 2");
}

std::size_t AbelsElement::slot(int i, int j) {
  if (i == 1 && j == 2) return 0;
  if (i == 1 && j == 3) return 1;
  if (i == 1 && j == 4) return 2;
  if (i == 2 && j == 3) return 3;
  if (i == 2 && j == 4) return 4;
  if (i == 3 && j == 4) return 5;
  throw PreconditionError("not an off-diagonal upper-triangular position");
}

AbelsElement AbelsElement::elementary(int i, int j, const PAdicLaurent& value) {
  AbelsElement g(value.prime());
  g.setOffDiagonal(i, j, value);
  return g;
}

AbelsElement AbelsElement::diagonal(long kExp, long nExp, std::uint32_t prime) {
  AbelsElement g(prime);
  g.kExp_ = kExp;
  g.nExp_ = nExp;
  return g;
}

PAdicLaurent AbelsElement::entry(int i, int j) const {
  if (i > j) return PAdicLaurent(prime_);
  if (i == j) {
    if (i == 2) return PAdicLaurent::power(kExp_, prime_);
    if (i == 3) return PAdicLaurent::power(nExp_, prime_);
    return PAdicLaurent::integer(1, prime_);
  }
  return off_[slot(i, j)];
}

void AbelsElement::setOffDiagonal(int i, int j, PAdicLaurent value) {
  if (value.prime() != prime_) throw PreconditionError("entry has a different prime");
  off_[slot(i, j)] = std::move(value);
}

AbelsElement operator*(const AbelsElement& g, const AbelsElement& h) {
  if (g.prime_ != h.prime_) throw PreconditionError("Abels elements with different primes");
  AbelsElement r(g.prime_);
  r.kExp_ = g.kExp_ + h.kExp_;
  r.nExp_ = g.nExp_ + h.nExp_;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      PAdicLaurent s(g.prime_);
      for (int l = i; l <= j; ++l) s = s + g.entry(i, l) * h.entry(l, j);
      r.off_[AbelsElement::slot(i, j)] = std::move(s);
    }
  }
  return r;
}

AbelsElement AbelsElement::inverse() const {
  // Back substitution for the upper-triangular inverse, column by column.
  AbelsElement r(prime_);
  r.kExp_ = -kExp_;
  r.nExp_ = -nExp_;
  for (int j = 2; j <= 4; ++j) {
    for (int i = j - 1; i >= 1; --i) {
      // (U^-1)_ij = -(sum_{l=i}^{j-1} (U^-1)_il U_lj) / U_jj
      PAdicLaurent s(prime_);
      for (int l = i; l < j; ++l) s = s + r.entry(i, l) * entry(l, j);
      const long djj = j == 2 ? kExp_ : (j == 3 ? nExp_ : 0);
      r.off_[slot(i, j)] = (-s).timesPower(-djj);
    }
  }
  return r;
}

bool AbelsElement::inCenter() const {
  if (kExp_ != 0 || nExp_ != 0) return false;
  for (std::size_t s = 0; s < off_.size(); ++s) {
    if (s != 2 && !off_[s].isZero()) return false;
  }
  return true;
}

bool AbelsElement::inN() const { return inCenter() && off_[2].isInteger(); }

std::string AbelsElement::str() const {
  std::string out;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (!out.empty()) out += ' ';
      out += entry(i, j).str();
    }
  }
  return out;
}

CongruenceQuotient::CongruenceQuotient(std::uint64_t m, std::uint32_t p) : modulus(m), prime(p) {
  if (m < 2) throw PreconditionError("congruence modulus must be >= 2");
  if (std::gcd<std::uint64_t>(m, p) != 1) {
    throw PreconditionError("modulus " + std::to_string(m) + " is not coprime to p = " +
                            std::to_string(p));
  }
}

ModMatrix4 modIdentity() {
  ModMatrix4 x;
  for (int i = 1; i <= 4; ++i) x(i, i) = 1;
  return x;
}

ModMatrix4 modMultiply(const ModMatrix4& x, const ModMatrix4& y, std::uint64_t m) {
  ModMatrix4 r;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      unsigned __int128 s = 0;
      for (int l = 1; l <= 4; ++l) s += static_cast<unsigned __int128>(x(i, l)) * y(l, j);
      r(i, j) = static_cast<std::uint64_t>(s % m);
    }
  }
  return r;
}

ModMatrix4 abelsReduce(const AbelsElement& g, const CongruenceQuotient& q) {
  if (g.prime() != q.prime) throw PreconditionError("quotient prime differs from element prime");
  ModMatrix4 r;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i; j <= 4; ++j) r(i, j) = g.entry(i, j).reduce(q.modulus);
  }
  return r;
}

}  // namespace qdkit
