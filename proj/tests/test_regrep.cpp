#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "qdkit/errors.hpp"
#include "qdkit/regrep.hpp"

using namespace qdkit;

namespace {

double denseNorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

Mat randomMatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

// Random projection of rank <= maxRank supported in B_support of `ball`.
FiniteProjection randomSupported(const FreeBall& ball, std::size_t support, Eigen::Index maxRank,
                                 std::mt19937_64& rng) {
  const auto inner = static_cast<Eigen::Index>(ball.prefixSize(support));
  const Eigen::Index k = std::uniform_int_distribution<Eigen::Index>(1, std::min(maxRank, inner))(rng);
  Mat v = Mat::Zero(static_cast<Eigen::Index>(ball.size()), k);
  v.topRows(inner) = randomMatrix(inner, k, rng);
  return FiniteProjection::fromSpanningVectors(v, ball);
}

struct DenseOp {
  Mat m;
  std::size_t rows() const { return static_cast<std::size_t>(m.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m.cols()); }
  Vec apply(const Vec& x) const { return m * x; }
  Vec applyAdjoint(const Vec& x) const { return m.adjoint() * x; }
};

}  // namespace

TEST_CASE("truncated generators on B_1") {
  const auto rep = buildTruncatedRep(1);
  const auto& ta = rep.op(FreeWord::parse("a"));
  CHECK(ta.dim() == 5);
  CHECK(ta.nonZeros() == 2);
  CHECK(ta.isPartialPermutation());
  const Mat d = ta.dense();
  const auto& b = rep.ball();
  CHECK(d(*b.find(FreeWord::parse("a")), *b.find(FreeWord())) == Complex(1.0));
  CHECK(d(*b.find(FreeWord()), *b.find(FreeWord::parse("A"))) == Complex(1.0));
}

TEST_CASE("truncated generator on B_0 is zero") {
  const auto rep = buildTruncatedRep(0);
  const auto& ta = rep.op(FreeWord::parse("a"));
  CHECK(ta.dim() == 1);
  CHECK(ta.nonZeros() == 0);
}

TEST_CASE("truncated generators are partial isometries with T_{s^-1} = T_s^*") {
  const auto rep = buildTruncatedRep(4);
  for (const auto& s : freeGenerators()) {
    const Mat t = rep.op(s).dense();
    const Mat tt = t.adjoint() * t;
    CHECK((tt - Mat(tt.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index i = 0; i < tt.rows(); ++i) {
      CHECK((tt(i, i) == Complex(0.0) || tt(i, i) == Complex(1.0)));
    }
    CHECK(rep.op(s.inverse()) == rep.op(s).adjoint());
    CHECK(rep.op(s).adjoint().adjoint() == rep.op(s));
  }
}

TEST_CASE("entries follow left multiplication") {
  const auto rep = buildTruncatedRep(3);
  const auto& b = rep.ball();
  for (const auto& s : freeGenerators()) {
    const Mat t = rep.op(s).dense();
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto target = b.find(s * b[j]);
      for (std::size_t i = 0; i < b.size(); ++i) {
        const Complex expect = target && *target == i ? 1.0 : 0.0;
        CHECK(t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == expect);
      }
    }
  }
}

TEST_CASE("operator norm examples") {
  CHECK(opNorm(DenseOperator(Mat::Identity(3, 3))) == doctest::Approx(1.0).epsilon(1e-12));
  const SparseOperator single(4, {{2, 1, Complex(0.0, 1.0)}});
  CHECK(single.isPartialPermutation());
  CHECK(opNorm(single) == doctest::Approx(1.0).epsilon(1e-12));
  Mat j(2, 2);
  j << 0, -1, 1, 0;
  CHECK(std::abs(opNorm(DenseOperator(j - Mat::Identity(2, 2))) - std::sqrt(2.0)) < 1e-9);
  CHECK(opNorm(SparseOperator(3, {})) == 0.0);
}

TEST_CASE("operator norm agrees with a dense SVD oracle") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const auto r = std::uniform_int_distribution<Eigen::Index>(1, 64)(rng);
    const auto c = std::uniform_int_distribution<Eigen::Index>(1, 64)(rng);
    const Mat m = randomMatrix(r, c, rng);
    const double expect = denseNorm(m);
    CHECK(std::abs(opNorm(DenseOp{m}) - expect) <= 1e-9 * std::max(1.0, expect));
  }
}

TEST_CASE("power iteration reports non-convergence") {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 0.999;
  m(2, 2) = 0.5;
  NormOptions opt;
  opt.maxIterations = 3;
  CHECK_THROWS_AS(opNorm(DenseOperator(m), opt), NonConvergenceError);
  opt.tol = 0.0;
  CHECK_THROWS_AS(opNorm(DenseOperator(m), opt), PreconditionError);
}

TEST_CASE("commutator with the delta at the identity") {
  const auto rep = buildTruncatedRep(2);
  Mat v = Mat::Zero(static_cast<Eigen::Index>(rep.dim()), 1);
  v(0, 0) = 1.0;
  const auto p = FiniteProjection::fromFrame(v, rep.ball());
  CHECK(p.supportRadius() == 0);
  const auto c = commutatorNorm(rep, FreeWord::parse("a"), p);
  CHECK(c.exactOnFullSpace);
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("commutator with the depth-3 sphere vector") {
  const auto rep = buildTruncatedRep(4);
  Mat v = Mat::Zero(static_cast<Eigen::Index>(rep.dim()), 1);
  for (std::size_t i = 1; i < rep.ball().prefixSize(3); ++i) {
    const double size = 4.0 * std::pow(3.0, static_cast<double>(rep.ball().lengthAt(i) - 1));
    v(static_cast<Eigen::Index>(i), 0) = 1.0 / std::sqrt(size * 3.0);
  }
  const auto p = FiniteProjection::fromFrame(v, rep.ball());
  const auto c = commutatorNorm(rep, FreeWord::parse("a"), p);
  CHECK(std::abs(c.value - std::sqrt(2.0 / 3.0)) < 1e-9);
}

TEST_CASE("support too large for an exact commutator is rejected") {
  const auto rep = buildTruncatedRep(3);
  Mat v = Mat::Zero(static_cast<Eigen::Index>(rep.dim()), 1);
  v(static_cast<Eigen::Index>(rep.dim() - 1), 0) = 1.0;
  const auto p = FiniteProjection::fromFrame(v, rep.ball());
  CHECK(p.supportRadius() == 3);
  CHECK_THROWS_AS(commutatorNorm(rep, FreeWord::parse("b"), p), ExactnessError);
  CHECK_THROWS_AS(commutatorNormWord(rep, FreeWord::parse("ab"), p), ExactnessError);
  CHECK_THROWS_AS(commutatorNorm(rep, FreeWord::parse("ab"), p), PreconditionError);
}

TEST_CASE("projection construction checks") {
  const FreeBall ball = freeBall(2);
  Mat v = Mat::Zero(17, 2);
  v(0, 0) = 1.0;
  v(0, 1) = 1.0;
  CHECK_THROWS_AS(FiniteProjection::fromFrame(v, ball), PreconditionError);
  CHECK(FiniteProjection::fromSpanningVectors(v, ball).rank() == 1);
  CHECK_THROWS_AS(FiniteProjection::fromSpanningVectors(Mat::Zero(17, 1), ball), PreconditionError);
  CHECK_THROWS_AS(FiniteProjection::fromFrame(Mat::Zero(5, 1), ball), PreconditionError);
}

TEST_CASE("commutator norms match dense oracles on random projections") {
  std::mt19937_64 rng(22);
  const auto rep = buildTruncatedRep(3);
  for (int t = 0; t < 50; ++t) {
    const auto p = randomSupported(rep.ball(), 2, 4, rng);
    const Mat pm = p.frame() * p.frame().adjoint();
    const Mat id = Mat::Identity(pm.rows(), pm.cols());
    for (const auto& s : freeGenerators()) {
      const Mat u = rep.op(s).dense();
      const double value = commutatorNorm(rep, s, p).value;
      const double direct = denseNorm(u * pm - pm * u);
      const double blocks = std::max(denseNorm(pm * u * (id - pm)), denseNorm((id - pm) * u * pm));
      CHECK(std::abs(value - direct) < 1e-8);
      CHECK(std::abs(value - blocks) < 1e-8);
      CHECK(std::abs(value - commutatorNorm(rep, s.inverse(), p).value) < 1e-10);
    }
  }
}

TEST_CASE("word commutators match the dense product") {
  std::mt19937_64 rng(23);
  const auto rep = buildTruncatedRep(4);
  const FreeWord g = FreeWord::parse("aB");
  Mat u = rep.op(FreeWord::parse("a")).dense() * rep.op(FreeWord::parse("B")).dense();
  for (int t = 0; t < 10; ++t) {
    const auto p = randomSupported(rep.ball(), 2, 3, rng);
    const Mat pm = p.frame() * p.frame().adjoint();
    CHECK(std::abs(commutatorNormWord(rep, g, p).value - denseNorm(u * pm - pm * u)) < 1e-8);
  }
  CHECK(commutatorNormWord(rep, FreeWord(), randomSupported(rep.ball(), 2, 2, rng)).value == 0.0);
}
