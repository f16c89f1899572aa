#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qdkit {

/// Exact element u·p^(-k) of Z[1/p], normalized so that p does not divide u
/// when k > 0, and k = 0 when u = 0.
class PAdicLaurent {
 public:
  explicit PAdicLaurent(std::uint32_t prime = 2) : prime_(prime) {}
  PAdicLaurent(mpz_class mantissa, std::uint32_t expo, std::uint32_t prime);

  static PAdicLaurent integer(long value, std::uint32_t prime) {
    return PAdicLaurent(mpz_class(value), 0, prime);
  }
  /// p^e for any integer e.
  static PAdicLaurent power(long e, std::uint32_t prime);

  const mpz_class& mantissa() const noexcept { return mantissa_; }
  std::uint32_t expo() const noexcept { return expo_; }
  std::uint32_t prime() const noexcept { return prime_; }

  bool isZero() const { return mantissa_ == 0; }
  bool isInteger() const noexcept { return expo_ == 0; }

  PAdicLaurent operator-() const;
  friend PAdicLaurent operator+(const PAdicLaurent& x, const PAdicLaurent& y);
  friend PAdicLaurent operator-(const PAdicLaurent& x, const PAdicLaurent& y);
  friend PAdicLaurent operator*(const PAdicLaurent& x, const PAdicLaurent& y);
  friend bool operator==(const PAdicLaurent& x, const PAdicLaurent& y) {
    return x.prime_ == y.prime_ && x.expo_ == y.expo_ && x.mantissa_ == y.mantissa_;
  }

  /// Multiplies by p^e, e of either sign.
  PAdicLaurent timesPower(long e) const;

  /// Image in Z/m; requires gcd(m, p) = 1.
  std::uint64_t reduce(std::uint64_t m) const;

  /// "u:k" serialization.
  std::string str() const;

 private:
  void normalize();

  mpz_class mantissa_{0};
  std::uint32_t expo_ = 0;
  std::uint32_t prime_;
};

/// Inverse of a mod m via the extended Euclidean algorithm. Throws
/// PreconditionError when gcd(a, m) != 1.
std::uint64_t modInverse(std::uint64_t a, std::uint64_t m);

}  // namespace qdkit
