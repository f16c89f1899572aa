#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "qdkit/padic.hpp"

namespace qdkit {

/// Element of Abels' group: the upper-triangular 4x4 matrix
///
///   [ 1  x12   x13   x14 ]
///   [ 0  p^k   x23   x24 ]
///   [ 0   0    p^n   x34 ]
///   [ 0   0     0     1  ]
///
/// with x_ij in Z[1/p] and k, n in Z.
class AbelsElement {
 public:
  explicit AbelsElement(std::uint32_t prime = 2);

  static AbelsElement identity(std::uint32_t prime) { return AbelsElement(prime); }
  /// Identity plus `value` at (i, j), 1 <= i < j <= 4.
  static AbelsElement elementary(int i, int j, const PAdicLaurent& value);
  static AbelsElement diagonal(long kExp, long nExp, std::uint32_t prime);

  std::uint32_t prime() const noexcept { return prime_; }
  long kExp() const noexcept { return kExp_; }
  long nExp() const noexcept { return nExp_; }

  /// Matrix entry (1-based), diagonal entries included.
  PAdicLaurent entry(int i, int j) const;
  void setOffDiagonal(int i, int j, PAdicLaurent value);
  void setDiagonalExponents(long kExp, long nExp) {
    kExp_ = kExp;
    nExp_ = nExp;
  }

  AbelsElement inverse() const;
  friend AbelsElement operator*(const AbelsElement& g, const AbelsElement& h);
  friend bool operator==(const AbelsElement&, const AbelsElement&) = default;

  /// Matches the displayed center: only x14 may be non-zero, k = n = 0.
  bool inCenter() const;
  /// In the center with integer x14.
  bool inN() const;

  std::string str() const;

 private:
  static std::size_t slot(int i, int j);

  std::uint32_t prime_;
  long kExp_ = 0;
  long nExp_ = 0;
  // x12, x13, x14, x23, x24, x34
  std::array<PAdicLaurent, 6> off_;
};

/// Reduction of Abels' group modulo m, gcd(m, p) = 1.
struct CongruenceQuotient {
  CongruenceQuotient(std::uint64_t modulus, std::uint32_t prime);
  std::uint64_t modulus;
  std::uint32_t prime;
};

/// 4x4 matrix over Z/m, row-major.
struct ModMatrix4 {
  std::array<std::uint64_t, 16> a{};
  std::uint64_t& operator()(int i, int j) { return a[(i - 1) * 4 + (j - 1)]; }
  std::uint64_t operator()(int i, int j) const { return a[(i - 1) * 4 + (j - 1)]; }
  friend bool operator==(const ModMatrix4&, const ModMatrix4&) = default;
};

ModMatrix4 modIdentity();
ModMatrix4 modMultiply(const ModMatrix4& x, const ModMatrix4& y, std::uint64_t m);

/// Entry-wise image of g in 4x4 matrices over Z/m. Throws PreconditionError
/// if m is not coprime to p.
ModMatrix4 abelsReduce(const AbelsElement& g, const CongruenceQuotient& q);

}  // namespace qdkit

template <>
struct std::hash<qdkit::ModMatrix4> {
  std::size_t operator()(const qdkit::ModMatrix4& x) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : x.a) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};
