#include "qdkit/monomial.hpp"

#include <cmath>
#include <numbers>

#include "qdkit/errors.hpp"

namespace qdkit {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fitsInt64(i128 v) {
  return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

Rotation makeRotation(i128 num, i128 den) {
  num %= den;
  if (num < 0) num += den;
  const i128 g = gcd128(num, den);
  num /= g;
  den /= g;
  if (!fitsInt64(den)) throw ResourceCapError("rotation denominator overflows 64 bits");
  return Rotation(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rotation::Rotation(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw PreconditionError("rotation denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const auto g = static_cast<std::int64_t>(gcd128(num, den));
  num_ = num / g;
  den_ = den / g;
}

Complex Rotation::toComplex() const {
  if (num_ == 0) return {1.0, 0.0};
  if (2 * num_ == den_) return {-1.0, 0.0};
  if (4 * num_ == den_) return {0.0, 1.0};
  if (4 * num_ == 3 * den_) return {0.0, -1.0};
  const double t = 2.0 * std::numbers::pi * value();
  return {std::cos(t), std::sin(t)};
}

Rotation Rotation::folded() const {
  return 2 * num_ <= den_ ? *this : -*this;
}

Rotation operator+(const Rotation& x, const Rotation& y) {
  return makeRotation(static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_,
                      static_cast<i128>(x.den_) * y.den_);
}

bool operator<(const Rotation& x, const Rotation& y) {
  return static_cast<i128>(x.num_) * y.den_ < static_cast<i128>(y.num_) * x.den_;
}

double chordLength(const Rotation& r) {
  const Rotation f = r.folded();
  if (f.isZero()) return 0.0;
  if (f == Rotation(1, 2)) return 2.0;
  if (f == Rotation(1, 3)) return std::sqrt(3.0);
  if (f == Rotation(1, 4)) return std::sqrt(2.0);
  if (f == Rotation(1, 6)) return 1.0;
  return 2.0 * std::sin(std::numbers::pi * f.value());
}

// ---------------------------------------------------------------------------

Phase Phase::fromComplex(Complex z) {
  const double a = std::abs(z);
  if (std::abs(a - 1.0) > 1e-9) throw PreconditionError("phase must have modulus 1");
  Phase p;
  p.exact_ = false;
  p.z_ = z / a;
  return p;
}

double Phase::turns() const {
  if (exact_) return rot_.value();
  double t = std::arg(z_) / (2.0 * std::numbers::pi);
  if (t < 0) t += 1.0;
  return t >= 1.0 ? 0.0 : t;
}

bool Phase::isOne() const {
  return exact_ ? rot_.isZero() : std::abs(z_ - Complex(1.0, 0.0)) <= 1e-12;
}

Phase Phase::conj() const {
  if (exact_) return Phase(-rot_);
  return fromComplex(std::conj(z_));
}

Phase operator*(const Phase& x, const Phase& y) {
  if (x.exact_ && y.exact_) return Phase(x.rot_ + y.rot_);
  return Phase::fromComplex(x.toComplex() * y.toComplex());
}

bool operator==(const Phase& x, const Phase& y) {
  if (x.exact_ && y.exact_) return x.rot_ == y.rot_;
  return std::abs(x.toComplex() - y.toComplex()) <= 1e-12;
}

// ---------------------------------------------------------------------------

MonomialMatrix::MonomialMatrix(std::vector<std::uint32_t> perm, std::vector<Phase> phases)
    : perm_(std::move(perm)), phases_(std::move(phases)) {
  if (perm_.size() != phases_.size()) {
    throw PreconditionError("permutation and phase vectors differ in length");
  }
  std::vector<bool> seen(perm_.size(), false);
  for (auto p : perm_) {
    if (p >= perm_.size() || seen[p]) throw PreconditionError("not a permutation");
    seen[p] = true;
  }
}

MonomialMatrix MonomialMatrix::identity(std::size_t d) { return scalar(d, Phase()); }

MonomialMatrix MonomialMatrix::scalar(std::size_t d, const Phase& z) {
  MonomialMatrix m;
  m.perm_.resize(d);
  for (std::size_t i = 0; i < d; ++i) m.perm_[i] = static_cast<std::uint32_t>(i);
  m.phases_.assign(d, z);
  return m;
}

MonomialMatrix MonomialMatrix::adjoint() const {
  MonomialMatrix m;
  m.perm_.resize(dim());
  m.phases_.resize(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    m.perm_[perm_[j]] = static_cast<std::uint32_t>(j);
    m.phases_[perm_[j]] = phases_[j].conj();
  }
  return m;
}

MonomialMatrix operator*(const MonomialMatrix& x, const MonomialMatrix& y) {
  if (x.dim() != y.dim()) throw PreconditionError("monomial dimensions differ");
  MonomialMatrix m;
  m.perm_.resize(y.dim());
  m.phases_.resize(y.dim());
  for (std::size_t j = 0; j < y.dim(); ++j) {
    const auto k = y.perm_[j];
    m.perm_[j] = x.perm_[k];
    m.phases_[j] = x.phases_[k] * y.phases_[j];
  }
  return m;
}

bool operator==(const MonomialMatrix& x, const MonomialMatrix& y) {
  return x.perm_ == y.perm_ && x.phases_ == y.phases_;
}

bool MonomialMatrix::isIdentity() const {
  for (std::size_t j = 0; j < dim(); ++j) {
    if (perm_[j] != j || !phases_[j].isOne()) return false;
  }
  return true;
}

bool MonomialMatrix::isScalar(Phase* value) const {
  for (std::size_t j = 0; j < dim(); ++j) {
    if (perm_[j] != j || !(phases_[j] == phases_[0])) return false;
  }
  if (value) *value = dim() > 0 ? phases_[0] : Phase();
  return true;
}

Mat MonomialMatrix::dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Mat m = Mat::Zero(d, d);
  for (std::size_t j = 0; j < dim(); ++j) {
    m(perm_[j], static_cast<Eigen::Index>(j)) = phases_[j].toComplex();
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Largest |μ - 1| over μ^L = exp(2πi q), q exact.
double cycleChordExact(const Rotation& q, std::int64_t len) {
  const i128 a = q.num(), b = q.den(), l = len;
  // Eigenvalue rotations are (a + j b) / (b L); the one nearest 1/2 has
  // j near L/2 - a/b.
  i128 num = b * l - 2 * a;
  i128 j0 = num >= 0 ? num / (2 * b) : -((-num + 2 * b - 1) / (2 * b));
  double best = 0.0;
  for (i128 j = j0 - 1; j <= j0 + 1; ++j) {
    i128 jj = j % l;
    if (jj < 0) jj += l;
    best = std::max(best, chordLength(makeRotation(a + jj * b, b * l)));
  }
  return best;
}

double cycleChordFloat(double t, std::int64_t len) {
  const double l = static_cast<double>(len);
  const double j0 = std::floor(l / 2.0 - t);
  double best = 0.0;
  for (double j = j0 - 1; j <= j0 + 1; j += 1.0) {
    double r = std::fmod((t + j) / l, 1.0);
    if (r < 0) r += 1.0;
    const double f = std::min(r, 1.0 - r);
    best = std::max(best, 2.0 * std::sin(std::numbers::pi * f));
  }
  return best;
}

}  // namespace

double monomialNormMinusIdentity(const MonomialMatrix& m) {
  const auto& perm = m.perm();
  const auto& ph = m.phases();
  std::vector<bool> seen(m.dim(), false);
  double best = 0.0;
  for (std::size_t start = 0; start < m.dim(); ++start) {
    if (seen[start]) continue;
    Phase product;
    std::int64_t len = 0;
    for (std::size_t j = start; !seen[j]; j = perm[j]) {
      seen[j] = true;
      product = product * ph[j];
      ++len;
    }
    best = std::max(best, product.exact() ? cycleChordExact(product.rotation(), len)
                                          : cycleChordFloat(product.turns(), len));
  }
  return best;
}

double monomialDistance(const MonomialMatrix& m, const MonomialMatrix& n) {
  return monomialNormMinusIdentity(n.adjoint() * m);
}

MonomialMatrix directSum(const std::vector<MonomialMatrix>& blocks) {
  std::vector<std::uint32_t> perm;
  std::vector<Phase> phases;
  std::uint32_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      perm.push_back(offset + b.perm()[j]);
      phases.push_back(b.phases()[j]);
    }
    offset += static_cast<std::uint32_t>(b.dim());
  }
  return MonomialMatrix(std::move(perm), std::move(phases));
}

}  // namespace qdkit
