#pragma once

#include <cmath>
#include <string>

#include "qdkit/errors.hpp"

namespace qdkit {

namespace detail {

// Fixed pseudo-random fallback used only when the all-ones seed lies in the
// kernel of A.
inline Vec fallbackSeed(std::size_t n) {
  Vec v(static_cast<Eigen::Index>(n));
  std::uint64_t s = 0x9E3779B97F4A7C15ull;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v[i] = Complex(static_cast<double>(s % 1000003) / 1000003.0 + 0.5, 0.0);
  }
  return v.normalized();
}

}  // namespace detail

template <class Op>
NormEstimate opNormEstimate(const Op& op, const NormOptions& opt) {
  if (!(opt.tol > 0)) throw PreconditionError("opNorm tolerance must be positive");
  const std::size_t n = op.cols();
  NormEstimate out;
  if (n == 0 || op.rows() == 0) return out;

  Vec v = Vec::Ones(static_cast<Eigen::Index>(n)) / std::sqrt(static_cast<double>(n));
  Vec w = op.applyAdjoint(op.apply(v));
  if (w.norm() == 0.0) {
    v = detail::fallbackSeed(n);
    w = op.applyAdjoint(op.apply(v));
    if (w.norm() == 0.0) return out;  // A vanishes on two generic vectors: A = 0
  }
  for (std::size_t it = 1; it <= opt.maxIterations; ++it) {
    const double lambda = v.dot(w).real();
    const double residual = (w - lambda * v).norm();
    if (residual <= opt.tol * std::max(lambda, 1.0)) {
      out.value = std::sqrt(std::max(lambda, 0.0));
      out.iterations = it;
      out.residual = residual;
      return out;
    }
    v = w / w.norm();
    w = op.applyAdjoint(op.apply(v));
  }
  throw NonConvergenceError("power iteration did not converge in " +
                            std::to_string(opt.maxIterations) + " iterations");
}

}  // namespace qdkit
