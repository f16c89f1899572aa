#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstddef>
#include <vector>

namespace qdkit {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Square sparse operator on C^dim. `isPartialPermutation` is set when every
/// column holds at most one non-zero and all non-zeros have modulus 1.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, const std::vector<Triplet>& triplets);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t rows() const noexcept { return dim(); }
  std::size_t cols() const noexcept { return dim(); }
  std::size_t nonZeros() const noexcept { return static_cast<std::size_t>(m_.nonZeros()); }
  bool isPartialPermutation() const noexcept { return partialPermutation_; }

  Vec apply(const Vec& x) const { return m_ * x; }
  Vec applyAdjoint(const Vec& x) const { return m_.adjoint() * x; }
  SparseOperator adjoint() const;
  Mat dense() const { return Mat(m_); }
  std::vector<Triplet> triplets() const;

  friend bool operator==(const SparseOperator& x, const SparseOperator& y);

 private:
  void classify();

  Eigen::SparseMatrix<Complex> m_;
  bool partialPermutation_ = false;
};

/// Dense matrix viewed as an operator (rows x cols).
class DenseOperator {
 public:
  explicit DenseOperator(Mat m) : m_(std::move(m)) {}
  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  Vec apply(const Vec& x) const { return m_ * x; }
  Vec applyAdjoint(const Vec& x) const { return m_.adjoint() * x; }
  const Mat& matrix() const noexcept { return m_; }

 private:
  Mat m_;
};

struct NormOptions {
  double tol = 1e-10;
  std::size_t maxIterations = 100'000;
};

struct NormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  /// ||A*A v - λ v|| at termination.
  double residual = 0.0;
};

/// Largest singular value by power iteration on A*A from the normalized
/// all-ones vector. Stops once the eigen-residual is below
/// tol·max(λ, 1), which places λ within that distance of an eigenvalue of
/// A*A. Throws NonConvergenceError after maxIterations.
template <class Op>
NormEstimate opNormEstimate(const Op& op, const NormOptions& opt = {});

template <class Op>
double opNorm(const Op& op, const NormOptions& opt = {}) {
  return opNormEstimate(op, opt).value;
}

}  // namespace qdkit

#include "qdkit/detail/op_norm.ipp"
