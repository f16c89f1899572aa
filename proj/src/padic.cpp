#include "qdkit/padic.hpp"

#include <numeric>

#include "qdkit/errors.hpp"

namespace qdkit {

namespace {

void requireSamePrime(const PAdicLaurent& x, const PAdicLaurent& y) {
  if (x.prime() != y.prime()) throw PreconditionError("Z[1/p] operands with different primes");
}

mpz_class powUi(std::uint32_t p, std::uint32_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

}  // namespace

PAdicLaurent::PAdicLaurent(mpz_class mantissa, std::uint32_t expo, std::uint32_t prime)
    : mantissa_(std::move(mantissa)), expo_(expo), prime_(prime) {
  if (prime < 2) throw PreconditionError("Z[1/p] needs p >= 2");
  normalize();
}

void PAdicLaurent::normalize() {
  if (mantissa_ == 0) {
    expo_ = 0;
    return;
  }
  while (expo_ > 0 && mpz_divisible_ui_p(mantissa_.get_mpz_t(), prime_)) {
    mpz_divexact_ui(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), prime_);
    --expo_;
  }
}

PAdicLaurent PAdicLaurent::power(long e, std::uint32_t prime) {
  if (e >= 0) return PAdicLaurent(powUi(prime, static_cast<std::uint32_t>(e)), 0, prime);
  return PAdicLaurent(mpz_class(1), static_cast<std::uint32_t>(-e), prime);
}

PAdicLaurent PAdicLaurent::operator-() const {
  return PAdicLaurent(mpz_class(-mantissa_), expo_, prime_);
}

PAdicLaurent operator+(const PAdicLaurent& x, const PAdicLaurent& y) {
  requireSamePrime(x, y);
  const std::uint32_t k = std::max(x.expo_, y.expo_);
  mpz_class u = x.mantissa_ * powUi(x.prime_, k - x.expo_) +
                y.mantissa_ * powUi(x.prime_, k - y.expo_);
  return PAdicLaurent(std::move(u), k, x.prime_);
}

PAdicLaurent operator-(const PAdicLaurent& x, const PAdicLaurent& y) { return x + (-y); }

PAdicLaurent operator*(const PAdicLaurent& x, const PAdicLaurent& y) {
  requireSamePrime(x, y);
  return PAdicLaurent(x.mantissa_ * y.mantissa_, x.expo_ + y.expo_, x.prime_);
}

PAdicLaurent PAdicLaurent::timesPower(long e) const {
  if (e >= 0) {
    if (static_cast<long>(expo_) >= e) {
      return PAdicLaurent(mantissa_, expo_ - static_cast<std::uint32_t>(e), prime_);
    }
    return PAdicLaurent(mantissa_ * powUi(prime_, static_cast<std::uint32_t>(e) - expo_), 0,
                        prime_);
  }
  return PAdicLaurent(mantissa_, expo_ + static_cast<std::uint32_t>(-e), prime_);
}

std::uint64_t PAdicLaurent::reduce(std::uint64_t m) const {
  if (m == 0) throw PreconditionError("modulus must be positive");
  if (std::gcd<std::uint64_t>(m, prime_) != 1) {
    throw PreconditionError("modulus " + std::to_string(m) + " is not coprime to p = " +
                            std::to_string(prime_));
  }
  if (m == 1) return 0;
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), mantissa_.get_mpz_t(), m);
  const std::uint64_t pinv = modInverse(prime_ % m, m);
  std::uint64_t scale = 1;
  for (std::uint32_t i = 0; i < expo_; ++i) {
    scale = static_cast<std::uint64_t>((static_cast<unsigned __int128>(scale) * pinv) % m);
  }
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(r.get_ui()) * scale) % m);
}

std::string PAdicLaurent::str() const { return mantissa_.get_str() + ":" + std::to_string(expo_); }

std::uint64_t modInverse(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid on signed 128-bit to avoid overflow for 64-bit moduli.
  __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a % m);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) {
    throw PreconditionError(std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  if (t0 < 0) t0 += static_cast<__int128>(m);
  return static_cast<std::uint64_t>(t0);
}

}  // namespace qdkit
