#include "qdkit/regrep.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace qdkit {

FreeTruncatedRep buildTruncatedRep(std::size_t radius, std::size_t cap) {
  const auto gens = freeGenerators();
  return FreeTruncatedRep(freeBall(radius, cap), std::span<const FreeWord>(gens),
                          [](const FreeWord& s, const FreeWord& t) { return s * t; });
}

namespace {

std::size_t supportRadiusOf(const Mat& frame, const FreeBall& ball) {
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < frame.rows(); ++i) {
    if (frame.row(i).squaredNorm() > 0.0) r = std::max(r, ball.lengthAt(static_cast<std::size_t>(i)));
  }
  return r;
}

// Orthonormal basis of the column span by modified Gram-Schmidt with one
// re-orthogonalization pass. Columns are combinations of the inputs, so rows
// that vanish in the input stay exactly zero.
Mat orthonormalBasis(const Mat& vectors, double cutoff = 1e-10) {
  Mat q(vectors.rows(), vectors.cols());
  Eigen::Index r = 0;
  double scale = 0.0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) scale = std::max(scale, vectors.col(j).norm());
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Vec v = vectors.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < r; ++i) v -= q.col(i).dot(v) * q.col(i);
    }
    const double nv = v.norm();
    if (nv > cutoff * std::max(scale, 1.0)) q.col(r++) = v / nv;
  }
  return q.leftCols(r);
}

// Largest singular value of a small dense matrix by power iteration on
// M = A^*A, where step j multiplies by M^(2^j). Nearly equal top singular
// values are common for commutators, and plain iteration stalls on them.
// The stopping rule is the residual of M itself, as in opNormEstimate.
double smallDenseNorm(const Mat& a, const NormOptions& opt) {
  if (!(opt.tol > 0)) throw PreconditionError("opNorm tolerance must be positive");
  const Eigen::Index n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;
  const Mat m = a.adjoint() * a;
  const double mScale = m.cwiseAbs().maxCoeff();
  if (mScale == 0.0) return 0.0;
  Mat power = m / mScale;
  Vec v = Vec::Ones(n) / std::sqrt(static_cast<double>(n));
  if ((m * v).norm() == 0.0) v = detail::fallbackSeed(static_cast<std::size_t>(n));
  for (std::size_t it = 1; it <= opt.maxIterations; ++it) {
    const Vec w = m * v;
    const double lambda = v.dot(w).real();
    if ((w - lambda * v).norm() <= opt.tol * std::max(lambda, 1.0)) return std::sqrt(std::max(lambda, 0.0));
    Vec next = power * v;
    if (next.norm() == 0.0) next = w;
    v = next / next.norm();
    Mat squared = power * power;
    const double s = squared.cwiseAbs().maxCoeff();
    if (s > 0.0) power = squared / s;
  }
  throw NonConvergenceError("power iteration did not converge in " +
                            std::to_string(opt.maxIterations) + " iterations");
}

}  // namespace

FiniteProjection FiniteProjection::fromFrame(Mat frame, const FreeBall& ball) {
  if (static_cast<std::size_t>(frame.rows()) != ball.size()) {
    throw PreconditionError("projection frame does not match the ball dimension");
  }
  if (frame.cols() == 0) throw PreconditionError("projection must be non-zero");
  const Mat gram = frame.adjoint() * frame;
  const double err = (gram - Mat::Identity(frame.cols(), frame.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-12) throw PreconditionError("projection frame is not orthonormal");
  const auto r = supportRadiusOf(frame, ball);
  return FiniteProjection(std::move(frame), r);
}

FiniteProjection FiniteProjection::fromSpanningVectors(const Mat& vectors, const FreeBall& ball) {
  if (static_cast<std::size_t>(vectors.rows()) != ball.size()) {
    throw PreconditionError("projection vectors do not match the ball dimension");
  }
  Mat q = orthonormalBasis(vectors);
  if (q.cols() == 0) throw PreconditionError("projection must be non-zero");
  return fromFrame(std::move(q), ball);
}

Vec applyWord(const FreeTruncatedRep& rep, const FreeWord& g, const Vec& x) {
  // λ_g = λ_{g_1} ... λ_{g_L}: apply the last letter first.
  Vec y = x;
  for (std::size_t i = g.length(); i-- > 0;) {
    y = rep.op(FreeWord::letter(g.at(i))).apply(y);
  }
  return y;
}

CommutatorNorm commutatorNormWord(const FreeTruncatedRep& rep, const FreeWord& g,
                                  const FiniteProjection& p, const NormOptions& opt) {
  if (p.dim() != rep.dim()) throw PreconditionError("projection lives on a different ball");
  if (p.supportRadius() + g.length() > rep.radius()) {
    throw ExactnessError("projection support radius " + std::to_string(p.supportRadius()) +
                         " too large for an exact commutator with a word of length " +
                         std::to_string(g.length()) + " on a ball of radius " +
                         std::to_string(rep.radius()));
  }
  CommutatorNorm out;
  out.exactOnFullSpace = true;
  if (g.isIdentity()) return out;

  const Mat& v = p.frame();
  const FreeWord gInv = g.inverse();
  const Eigen::Index k = v.cols();

  // range([λ,P]^*) ⊆ span(V, λ^* V), so the norm is that of C·Q.
  Mat span(v.rows(), 2 * k);
  span.leftCols(k) = v;
  for (Eigen::Index j = 0; j < k; ++j) span.col(k + j) = applyWord(rep, gInv, v.col(j));
  const Mat q = orthonormalBasis(span);

  Mat cq(v.rows(), q.cols());
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Vec col = q.col(j);
    cq.col(j) = applyWord(rep, g, p.apply(col)) - p.apply(applyWord(rep, g, col));
  }
  Eigen::HouseholderQR<Mat> qr(cq);
  const Eigen::Index r = std::min(cq.rows(), cq.cols());
  const Mat rFactor = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  out.value = smallDenseNorm(rFactor, opt);
  return out;
}

CommutatorNorm commutatorNorm(const FreeTruncatedRep& rep, const FreeWord& s,
                              const FiniteProjection& p, const NormOptions& opt) {
  if (s.length() != 1) throw PreconditionError("commutatorNorm expects a generator");
  return commutatorNormWord(rep, s, p, opt);
}

}  // namespace qdkit
