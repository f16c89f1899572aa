#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qdkit/sparse_operator.hpp"

namespace qdkit {

/// Exact element num/den of Q/Z, reduced with 0 <= num < den.
class Rotation {
 public:
  Rotation() = default;
  /// Throws PreconditionError for den <= 0.
  Rotation(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool isZero() const noexcept { return num_ == 0; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// exp(2πi num/den).
  Complex toComplex() const;
  /// Folded to [0, 1/2]: the distance of num/den to the nearest integer.
  Rotation folded() const;

  /// Throws ResourceCapError if the reduced denominator leaves int64.
  friend Rotation operator+(const Rotation& x, const Rotation& y);
  friend Rotation operator-(const Rotation& x) { return Rotation(x.den_ - x.num_, x.den_); }
  friend Rotation operator-(const Rotation& x, const Rotation& y) { return x + (-y); }
  friend bool operator==(const Rotation&, const Rotation&) = default;
  friend bool operator<(const Rotation& x, const Rotation& y);

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// |exp(2πi r) - 1| = 2 sin(π r), with √2, √3 and 2 returned from sqrt for
/// r = 1/4, 1/3, 1/2 (and their mirror images).
double chordLength(const Rotation& r);

/// Unit complex number, exact as a rotation when known, otherwise a double.
class Phase {
 public:
  Phase() = default;
  Phase(const Rotation& r) : exact_(true), rot_(r) {}  // NOLINT: implicit by design
  /// Renormalized to modulus 1; throws PreconditionError for |z| far from 1.
  static Phase fromComplex(Complex z);

  bool exact() const noexcept { return exact_; }
  const Rotation& rotation() const noexcept { return rot_; }
  Complex toComplex() const { return exact_ ? rot_.toComplex() : z_; }
  /// Argument / 2π in [0, 1).
  double turns() const;
  bool isOne() const;

  Phase conj() const;
  friend Phase operator*(const Phase& x, const Phase& y);
  /// Exact comparison for two exact phases, 1e-12 otherwise.
  friend bool operator==(const Phase& x, const Phase& y);

 private:
  bool exact_ = true;
  Rotation rot_;
  Complex z_{1.0, 0.0};
};

/// d x d matrix whose column j holds phase[j] in row perm[j] and zeros
/// elsewhere.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  /// Throws PreconditionError unless perm is a permutation of 0..d-1 and
  /// the sizes agree.
  MonomialMatrix(std::vector<std::uint32_t> perm, std::vector<Phase> phases);
  static MonomialMatrix identity(std::size_t d);
  static MonomialMatrix scalar(std::size_t d, const Phase& z);

  std::size_t dim() const noexcept { return perm_.size(); }
  const std::vector<std::uint32_t>& perm() const noexcept { return perm_; }
  const std::vector<Phase>& phases() const noexcept { return phases_; }

  MonomialMatrix adjoint() const;
  friend MonomialMatrix operator*(const MonomialMatrix& x, const MonomialMatrix& y);
  friend bool operator==(const MonomialMatrix& x, const MonomialMatrix& y);

  bool isIdentity() const;
  /// True when the matrix is z·I; z is written to *value when given.
  bool isScalar(Phase* value = nullptr) const;

  Mat dense() const;

 private:
  std::vector<std::uint32_t> perm_;
  std::vector<Phase> phases_;
};

/// ||M - 1|| from the cycle decomposition: on a cycle of length L whose
/// phase product has rotation q the eigenvalues are exp(2πi (q + j)/L).
double monomialNormMinusIdentity(const MonomialMatrix& m);

/// ||M - N|| = ||N^* M - 1||.
double monomialDistance(const MonomialMatrix& m, const MonomialMatrix& n);

/// Block-diagonal sum.
MonomialMatrix directSum(const std::vector<MonomialMatrix>& blocks);

}  // namespace qdkit
