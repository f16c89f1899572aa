#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace qdkit {

/// Letters of the free group on {a, b}. The enumerator order is the
/// tie-breaking order used for Cayley-ball bases: a < b < a^-1 < b^-1.
enum class Letter : std::uint8_t { a = 0, b = 1, aInv = 2, bInv = 3 };

constexpr Letter inverse(Letter x) noexcept {
  return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 2u);
}

constexpr char toChar(Letter x) noexcept {
  constexpr std::array<char, 4> chars{'a', 'b', 'A', 'B'};
  return chars[static_cast<std::size_t>(x)];
}

Letter letterFromChar(char c);

/// Reduced word in F_2. Stored as a string over {a, b, A, B} (A = a^-1,
/// B = b^-1); the empty string is the identity.
class FreeWord {
 public:
  FreeWord() = default;

  /// Freely reduces an arbitrary letter sequence ("e" and "" give the
  /// identity). Throws ParseError on characters outside {a,b,A,B}.
  static FreeWord parse(std::string_view text);
  static FreeWord letter(Letter x);

  std::size_t length() const noexcept { return letters_.size(); }
  bool isIdentity() const noexcept { return letters_.empty(); }
  Letter at(std::size_t i) const { return letterFromChar(letters_[i]); }
  Letter first() const { return at(0); }
  Letter last() const { return at(letters_.size() - 1); }

  FreeWord inverse() const;

  /// Letters as a string, "e" for the identity.
  std::string str() const { return letters_.empty() ? "e" : letters_; }
  const std::string& raw() const noexcept { return letters_; }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  explicit FreeWord(std::string reduced) : letters_(std::move(reduced)) {}
  friend FreeWord mulFree(const FreeWord&, const FreeWord&);

  std::string letters_;
};

/// Reduced concatenation u·v.
FreeWord mulFree(const FreeWord& u, const FreeWord& v);

inline FreeWord operator*(const FreeWord& u, const FreeWord& v) { return mulFree(u, v); }

/// The four generators a, b, a^-1, b^-1 in basis order.
std::array<FreeWord, 4> freeGenerators();

/// Shortlex order with letter order a < b < a^-1 < b^-1.
bool shortlexLess(const FreeWord& u, const FreeWord& v);

}  // namespace qdkit

template <>
struct std::hash<qdkit::FreeWord> {
  std::size_t operator()(const qdkit::FreeWord& w) const noexcept {
    return std::hash<std::string>{}(w.raw());
  }
};
