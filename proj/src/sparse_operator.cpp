#include "qdkit/sparse_operator.hpp"

#include <cmath>

#include "qdkit/errors.hpp"

namespace qdkit {

SparseOperator::SparseOperator(std::size_t dim, const std::vector<Triplet>& triplets)
    : m_(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) {
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(triplets.size());
  for (const auto& x : triplets) {
    if (x.row >= dim || x.col >= dim) throw PreconditionError("triplet outside operator");
    t.emplace_back(static_cast<Eigen::Index>(x.row), static_cast<Eigen::Index>(x.col), x.value);
  }
  m_.setFromTriplets(t.begin(), t.end());
  m_.prune(Complex(0.0, 0.0));
  m_.makeCompressed();
  classify();
}

void SparseOperator::classify() {
  partialPermutation_ = true;
  for (Eigen::Index c = 0; c < m_.outerSize() && partialPermutation_; ++c) {
    int count = 0;
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(m_, c); it; ++it) {
      if (++count > 1 || std::abs(std::abs(it.value()) - 1.0) > 1e-14) {
        partialPermutation_ = false;
        break;
      }
    }
  }
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator r;
  r.m_ = m_.adjoint();
  r.m_.makeCompressed();
  r.classify();
  return r;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  for (Eigen::Index c = 0; c < m_.outerSize(); ++c) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(m_, c); it; ++it) {
      out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()),
                     it.value()});
    }
  }
  return out;
}

bool operator==(const SparseOperator& x, const SparseOperator& y) {
  if (x.dim() != y.dim()) return false;
  const auto a = x.triplets();
  const auto b = y.triplets();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].row != b[i].row || a[i].col != b[i].col || a[i].value != b[i].value) return false;
  }
  return true;
}

}  // namespace qdkit
