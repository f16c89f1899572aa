#include "qdkit/free_word.hpp"

#include "qdkit/errors.hpp"

namespace qdkit {

Letter letterFromChar(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'b': return Letter::b;
    case 'A': return Letter::aInv;
    case 'B': return Letter::bInv;
    default: throw ParseError(std::string("not a free-group letter: '") + c + "'");
  }
}

namespace {

char invChar(char c) { return toChar(inverse(letterFromChar(c))); }

// Appends `c` to a reduced word, cancelling against the last letter.
void pushReduced(std::string& w, char c) {
  if (!w.empty() && w.back() == invChar(c)) {
    w.pop_back();
  } else {
    w.push_back(c);
  }
}

}  // namespace

FreeWord FreeWord::parse(std::string_view text) {
  if (text == "e" || text == "1") return FreeWord{};
  std::string w;
  w.reserve(text.size());
  for (char c : text) {
    letterFromChar(c);
    pushReduced(w, c);
  }
  return FreeWord(std::move(w));
}

FreeWord FreeWord::letter(Letter x) { return FreeWord(std::string(1, toChar(x))); }

FreeWord FreeWord::inverse() const {
  std::string w(letters_.rbegin(), letters_.rend());
  for (char& c : w) c = invChar(c);
  return FreeWord(std::move(w));
}

FreeWord mulFree(const FreeWord& u, const FreeWord& v) {
  const std::string& a = u.letters_;
  const std::string& b = v.letters_;
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() &&
         a[a.size() - 1 - cancel] == invChar(b[cancel])) {
    ++cancel;
  }
  std::string w;
  w.reserve(a.size() + b.size() - 2 * cancel);
  w.append(a, 0, a.size() - cancel);
  w.append(b, cancel, std::string::npos);
  return FreeWord(std::move(w));
}

std::array<FreeWord, 4> freeGenerators() {
  return {FreeWord::letter(Letter::a), FreeWord::letter(Letter::b),
          FreeWord::letter(Letter::aInv), FreeWord::letter(Letter::bInv)};
}

bool shortlexLess(const FreeWord& u, const FreeWord& v) {
  if (u.length() != v.length()) return u.length() < v.length();
  for (std::size_t i = 0; i < u.length(); ++i) {
    if (u.at(i) != v.at(i)) return u.at(i) < v.at(i);
  }
  return false;
}

}  // namespace qdkit
