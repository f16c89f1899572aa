#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdkit/cayley.hpp"
#include "qdkit/errors.hpp"
#include "qdkit/free_word.hpp"
#include "qdkit/sparse_operator.hpp"

namespace qdkit {

/// Compression P_B λ_s P_B of the left regular representation to a ball B,
/// one sparse operator per generator: (T_s)[idx(st), idx(t)] = 1 exactly when
/// t and st both lie in B.
template <class G, class Hash = std::hash<G>>
class TruncatedRep {
 public:
  template <class Mul>
  TruncatedRep(BallIndex<G, Hash> ball, std::span<const G> generators, Mul leftMul)
      : ball_(std::move(ball)), generators_(generators.begin(), generators.end()) {
    const std::size_t n = ball_.size();
    for (const G& s : generators_) {
      std::vector<Triplet> t;
      for (std::size_t j = 0; j < n; ++j) {
        if (const auto i = ball_.find(leftMul(s, ball_[j]))) t.push_back({*i, j, Complex(1.0)});
      }
      ops_.emplace_back(n, t);
    }
  }

  const BallIndex<G, Hash>& ball() const noexcept { return ball_; }
  std::size_t radius() const noexcept { return ball_.radius(); }
  std::size_t dim() const noexcept { return ball_.size(); }
  const std::vector<G>& generators() const noexcept { return generators_; }

  const SparseOperator& op(const G& s) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i] == s) return ops_[i];
    }
    throw PreconditionError("not a generator of this representation");
  }

 private:
  BallIndex<G, Hash> ball_;
  std::vector<G> generators_;
  std::vector<SparseOperator> ops_;
};

using FreeTruncatedRep = TruncatedRep<FreeWord>;

/// Truncated regular representation of F_2 on B_R, generators a, b, a^-1, b^-1.
FreeTruncatedRep buildTruncatedRep(std::size_t radius, std::size_t cap = kDefaultBallCap);

/// Finite-rank projection given by an orthonormal frame (columns) in the
/// basis of a ball. Tracks the largest word length carrying a non-zero entry.
class FiniteProjection {
 public:
  /// Throws PreconditionError unless the columns are orthonormal to 1e-12.
  static FiniteProjection fromFrame(Mat frame, const FreeBall& ball);
  /// Orthonormalizes the span of `vectors` (modified Gram-Schmidt, rank cutoff 1e-10).
  static FiniteProjection fromSpanningVectors(const Mat& vectors, const FreeBall& ball);

  std::size_t rank() const noexcept { return static_cast<std::size_t>(frame_.cols()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(frame_.rows()); }
  const Mat& frame() const noexcept { return frame_; }
  std::size_t supportRadius() const noexcept { return supportRadius_; }

  Vec apply(const Vec& x) const { return frame_ * (frame_.adjoint() * x); }

 private:
  FiniteProjection(Mat frame, std::size_t supportRadius)
      : frame_(std::move(frame)), supportRadius_(supportRadius) {}
  Mat frame_;
  std::size_t supportRadius_;
};

struct CommutatorNorm {
  double value = 0.0;
  /// Always true for a returned value: the support condition makes the
  /// compressed commutator equal the one on all of l^2.
  bool exactOnFullSpace = false;
};

/// ||[λ_s, P]|| for a generator s. Requires supp P ⊆ B_{R-1}; otherwise throws
/// ExactnessError.
CommutatorNorm commutatorNorm(const FreeTruncatedRep& rep, const FreeWord& s,
                              const FiniteProjection& p, const NormOptions& opt = {});

/// ||[λ_g, P]|| for an arbitrary word g, applied letter by letter. Requires
/// supp P ⊆ B_{R-|g|}.
CommutatorNorm commutatorNormWord(const FreeTruncatedRep& rep, const FreeWord& g,
                                  const FiniteProjection& p, const NormOptions& opt = {});

/// λ_g x computed through the truncated generators (exact when supp x ⊆ B_{R-|g|}).
Vec applyWord(const FreeTruncatedRep& rep, const FreeWord& g, const Vec& x);

}  // namespace qdkit
