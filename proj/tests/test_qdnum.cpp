#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "qdkit/errors.hpp"
#include "qdkit/qdnum.hpp"

using namespace qdkit;

namespace {

double sphereSize(std::size_t i) { return i == 0 ? 1.0 : 4.0 * std::pow(3.0, double(i - 1)); }

// Direct evaluation of Σ_i α_i α_{i-1}|S_{i-1} \ S^a_{i-1}| + α_i α_{i+1}|S^a_{i+1}|
// with α_0 = α_{n+1} = 0, counting the sets by enumeration.
double pairingSumByEnumeration(std::size_t n) {
  auto alpha = [n](std::size_t i) {
    return i == 0 || i > n ? 0.0 : 1.0 / std::sqrt(sphereSize(i) * double(n));
  };
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t notA = 0;
    for (const auto& w : freeSphere(i - 1)) notA += (w.isIdentity() || w.first() != Letter::a) ? 1 : 0;
    std::size_t startA = 0;
    for (const auto& w : freeSphere(i + 1)) startA += w.first() == Letter::a ? 1 : 0;
    sum += alpha(i) * alpha(i - 1) * double(notA) + alpha(i) * alpha(i + 1) * double(startA);
  }
  return sum;
}

// <λ_x ξ_n, ξ_n> = Σ_w ξ(x w) ξ(w) evaluated word by word.
double pairingByWords(const FreeWord& x, std::size_t n) {
  auto xi = [n](const FreeWord& w) {
    const auto l = w.length();
    return l == 0 || l > n ? 0.0 : 1.0 / std::sqrt(sphereSize(l) * double(n));
  };
  double s = 0.0;
  for (std::size_t l = 1; l <= n; ++l) {
    for (const auto& w : freeSphere(l)) s += xi(x * w) * xi(w);
  }
  return s;
}

Vec delta(std::size_t dim, std::size_t i) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

ParadoxicalCertificate threeTwoCertificate() {
  // X_2 of the standard certificate split by parity of length; both halves
  // are translated by a.
  auto c = f2StandardCertificate();
  const auto x2 = c.xPieces[1].contains;
  c.xPieces[1] = {"X2-even", [x2](const FreeWord& w) { return x2(w) && w.length() % 2 == 0; }};
  c.xPieces.push_back({"X2-odd", [x2](const FreeWord& w) { return x2(w) && w.length() % 2 == 1; }});
  c.xTranslators.push_back(FreeWord::parse("a"));
  return c;
}

}  // namespace

TEST_SUITE("sphere vectors") {
  TEST_CASE("depth one puts 1/2 on each generator") {
    const auto xi = xiVector(1, freeBall(2));
    REQUIRE(xi.alpha.size() == 1);
    CHECK(xi.alpha[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(xi.vector[0] == Complex(0.0));
    for (Eigen::Index i = 1; i <= 4; ++i) CHECK(xi.vector[i].real() == doctest::Approx(0.5));
    for (Eigen::Index i = 5; i < xi.vector.size(); ++i) CHECK(xi.vector[i] == Complex(0.0));
  }

  TEST_CASE("depth two coefficients and unit norm") {
    const auto xi = xiVector(2, freeBall(3));
    CHECK(xi.alpha[0] == doctest::Approx(1.0 / std::sqrt(8.0)));
    CHECK(xi.alpha[1] == doctest::Approx(1.0 / std::sqrt(24.0)));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(std::abs(xiVector(n, freeBall(6)).vector.norm() - 1.0) < 1e-12);
  }

  TEST_CASE("radius must cover the depth") {
    CHECK_THROWS_AS(xiVector(4, freeBall(3)), PreconditionError);
    CHECK_THROWS_AS(xiVector(0, freeBall(3)), PreconditionError);
  }

  TEST_CASE("closed-form pairing") {
    CHECK(pairingClosedForm(1) == 0.0);
    CHECK(std::abs(pairingClosedForm(3) - std::sqrt(3.0) / 3.0) < 1e-15);
    CHECK(std::abs(pairingClosedForm(1'000'000) - std::sqrt(3.0) / 2.0) < 1e-6);
    CHECK_THROWS_AS(pairingClosedForm(0), PreconditionError);
  }

  TEST_CASE("closed form agrees with the sphere-count sum and with direct enumeration") {
    for (std::size_t n = 1; n <= 7; ++n) {
      const double enumerated = pairingSumByEnumeration(n);
      std::vector<double> alpha;
      for (std::size_t i = 1; i <= n; ++i) alpha.push_back(1.0 / std::sqrt(sphereSize(i) * double(n)));
      CHECK(std::abs(pairingClosedForm(n) - enumerated) < 1e-12);
      CHECK(std::abs(radialPairingSum(alpha) - enumerated) < 1e-12);
      CHECK(std::abs(pairingByWords(FreeWord::parse("a"), n) - enumerated) < 1e-12);
    }
  }

  TEST_CASE("numeric pairing for every generator") {
    const auto rep = buildTruncatedRep(7);
    for (std::size_t n = 1; n <= 6; ++n) {
      for (const auto& x : freeGenerators()) {
        CHECK(std::abs(pairingNumeric(rep, x, n) - pairingClosedForm(n)) < 1e-10);
      }
    }
    CHECK(std::abs(pairingNumeric(rep, FreeWord::parse("a"), 4) - 0.75 * std::sqrt(3.0) / 2.0) < 1e-12);
    CHECK(std::abs(pairingNumeric(rep, FreeWord::parse("b"), 1)) < 1e-15);
    CHECK_THROWS_AS(pairingNumeric(rep, FreeWord::parse("a"), 7), PreconditionError);
  }
}

TEST_SUITE("rank-one commutators") {
  TEST_CASE("delta at the identity gives 1") {
    const auto rep = buildTruncatedRep(2);
    CHECK(rankOneCommutatorNorm(rep.op(FreeWord::parse("a")), delta(rep.dim(), 0)) == 1.0);
  }

  TEST_CASE("a fixed vector gives 0") {
    const SparseOperator swap(3, {{0, 1, 1.0}, {1, 0, 1.0}, {2, 2, 1.0}});
    Vec v(3);
    v << 1.0, 1.0, 0.0;
    CHECK(rankOneCommutatorNorm(swap, v.normalized()) < 1e-7);
    CHECK(rankOneCommutatorNorm(swap, delta(3, 2)) == 0.0);
  }

  TEST_CASE("depth-eight sphere vector") {
    const auto rep = buildTruncatedRep(9);
    const Vec xi = xiVector(8, rep.ball()).vector;
    const double v = rankOneCommutatorNorm(rep.op(FreeWord::parse("a")), xi);
    CHECK(std::abs(v - std::sqrt(1.0 - 0.75 * (7.0 / 8.0) * (7.0 / 8.0))) < 1e-12);
    CHECK(std::abs(v - 0.65252) < 5e-6);
  }

  TEST_CASE("non-unit vectors are rejected") {
    const auto rep = buildTruncatedRep(1);
    CHECK_THROWS_AS(rankOneCommutatorNorm(rep.op(FreeWord::parse("a")), 2.0 * delta(rep.dim(), 0)),
                    PreconditionError);
  }

  TEST_CASE("closed form decreases toward 1/2") {
    for (std::size_t n = 1; n < 300; ++n) CHECK(xiCommutatorClosedForm(n + 1) < xiCommutatorClosedForm(n));
    CHECK(xiCommutatorClosedForm(150) <= 0.51);
    CHECK(std::abs(xiCommutatorClosedForm(10'000'000) - 0.5) < 1e-6);
    CHECK(xiCommutatorClosedForm(3) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  }

  TEST_CASE("rank-one formula agrees with the general commutator") {
    const auto rep = buildTruncatedRep(6);
    for (std::size_t n = 1; n <= 5; ++n) {
      const Vec xi = xiVector(n, rep.ball()).vector;
      const auto p = FiniteProjection::fromFrame(Mat(xi), rep.ball());
      for (const auto& s : freeGenerators()) {
        CHECK(std::abs(commutatorNorm(rep, s, p).value - rankOneCommutatorNorm(rep.op(s), xi)) < 1e-9);
      }
    }
  }
}

TEST_SUITE("paradoxical certificates") {
  TEST_CASE("standard pieces") {
    const auto c = f2StandardCertificate();
    const auto& x1 = c.xPieces[0].contains;
    const auto& x2 = c.xPieces[1].contains;
    CHECK(x1(FreeWord()));
    CHECK(x1(FreeWord::parse("AAA")));
    CHECK(x1(FreeWord::parse("ab")));
    CHECK(x2(FreeWord::parse("Ab")));
    CHECK_FALSE(x2(FreeWord::parse("AA")));
    CHECK(c.yPieces[0].contains(FreeWord::parse("bA")));
    CHECK(c.yPieces[1].contains(FreeWord::parse("B")));
    CHECK(c.translatorSet().size() == 3);
  }

  TEST_CASE("pieces partition B_4") {
    const auto c = f2StandardCertificate();
    std::size_t total = 0;
    const auto ball = freeBall(4);
    for (const auto& w : ball.elements()) {
      for (const auto& p : c.xPieces) total += p.contains(w) ? 1 : 0;
      for (const auto& p : c.yPieces) total += p.contains(w) ? 1 : 0;
    }
    CHECK(total == 161);
  }

  TEST_CASE("verification on balls up to radius 8") {
    const auto c = f2StandardCertificate();
    for (std::size_t r = 0; r <= 8; ++r) {
      const auto rep = verifyCertificate(c, r);
      CHECK(rep.passed());
      CHECK(rep.checked == freeBall(r).size());
    }
    CHECK(verifyCertificate(c, 0).checked == 1);
  }

  TEST_CASE("a certificate without the identity fails with witness e") {
    auto c = f2StandardCertificate();
    const auto x1 = c.xPieces[0].contains;
    c.xPieces[0].contains = [x1](const FreeWord& w) { return !w.isIdentity() && x1(w); };
    const auto rep = verifyCertificate(c, 3);
    REQUIRE_FALSE(rep.passed());
    CHECK(rep.violations.front().witness.isIdentity());
    CHECK_THROWS_AS(cfLowerBound(c), VerificationError);
  }

  TEST_CASE("lower bounds") {
    const auto lb = cfLowerBound(f2StandardCertificate());
    CHECK(lb.numerator == 1);
    CHECK(lb.denominator == 2);
    CHECK(lb.value() == 0.5);
    CHECK(lb.finiteSet.size() == 3);
    const auto c3 = threeTwoCertificate();
    CHECK(verifyCertificate(c3, 6).passed());
    const auto lb3 = cfLowerBound(c3);
    CHECK(lb3.denominator == 3);
  }

  TEST_CASE("mismatched translators are a shape violation") {
    auto c = f2StandardCertificate();
    c.xTranslators.pop_back();
    const auto rep = verifyCertificate(c, 2);
    REQUIRE_FALSE(rep.passed());
    CHECK(rep.violations.front().kind == "shape");
  }
}

TEST_SUITE("trace lemma") {
  TEST_CASE("equality case") {
    Mat x = Mat::Zero(2, 2), q = Mat::Zero(2, 2);
    x(0, 0) = 1.0;
    x(1, 1) = -1.0;
    q(0, 0) = 1.0;
    const auto r = traceLemmaCheck(x, q);
    CHECK(r.lhs == 1.0);
    CHECK(r.bound == 1.0);
    CHECK(r.rank == 2);
    CHECK(r.ok);
  }

  TEST_CASE("zero matrix") {
    const auto r = traceLemmaCheck(Mat::Zero(3, 3), Mat::Identity(3, 3));
    CHECK(r.lhs == 0.0);
    CHECK(r.rank == 0);
    CHECK(r.ok);
  }

  TEST_CASE("preconditions") {
    Mat x = Mat::Zero(2, 2);
    x(0, 1) = 1.0;
    CHECK_THROWS_AS(traceLemmaCheck(x, Mat::Identity(2, 2)), PreconditionError);
    CHECK_THROWS_AS(traceLemmaCheck(Mat::Identity(2, 2), Mat::Identity(2, 2)), PreconditionError);
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CHECK_THROWS_AS(traceLemmaCheck(d, 2.0 * Mat::Identity(2, 2)), PreconditionError);
    CHECK_THROWS_AS(traceLemmaCheck(d, -0.5 * Mat::Identity(2, 2)), PreconditionError);
    CHECK_THROWS_AS(traceLemmaCheck(d, Mat::Identity(3, 3)), PreconditionError);
  }

  TEST_CASE("random instances never violate the bound") {
    const auto t = runTraceLemmaTrials(1000, 5);
    CHECK(t.violations == 0);
    CHECK(t.maxRatio <= 1.0 + 1e-9);
    CHECK(t.maxDim <= 40);
    const auto again = runTraceLemmaTrials(1000, 5);
    CHECK(again.maxRatio == t.maxRatio);
  }
}

TEST_SUITE("audit") {
  TEST_CASE("delta at the identity") {
    const auto rep = buildTruncatedRep(3);
    Mat v = Mat::Zero(static_cast<Eigen::Index>(rep.dim()), 1);
    v(0, 0) = 1.0;
    const auto rec =
        qrosenbergAudit(FiniteProjection::fromFrame(v, rep.ball()), f2StandardCertificate(), rep);
    CHECK(rec.rank == 1);
    CHECK(rec.epsilon == doctest::Approx(1.0));
    CHECK(rec.ok);
    CHECK(rec.bound == 0.5);
    CHECK(rec.traceX == 1.0);
    CHECK(rec.traceY == 0.0);
    for (const auto& [g, c] : rec.commutators) {
      if (g.isIdentity()) CHECK(c == 0.0);
    }
  }

  TEST_CASE("depth-eight sphere vector") {
    const auto rep = buildTruncatedRep(9);
    const Vec xi = xiVector(8, rep.ball()).vector;
    const auto rec =
        qrosenbergAudit(FiniteProjection::fromFrame(Mat(xi), rep.ball()), f2StandardCertificate(), rep);
    CHECK(std::abs(rec.epsilon - xiCommutatorClosedForm(8)) < 1e-8);
    CHECK(rec.ok);
    CHECK(rec.slackX >= -kAuditSlack);
    CHECK(rec.slackY >= -kAuditSlack);
    CHECK(rec.traceX + rec.traceY == doctest::Approx(1.0));
  }

  TEST_CASE("random projections respect the floor") {
    const auto rep = buildTruncatedRep(6);
    const auto batch = runRandomAudit(rep, f2StandardCertificate(), 30, 3, 4, 4);
    CHECK(batch.violations == 0);
    CHECK(batch.minEpsilon >= 0.5 - 1e-9);
    CHECK(batch.minSlack >= -kAuditSlack);
    for (const auto& r : batch.records) {
      CHECK(r.traceX >= -1e-12);
      CHECK(r.traceX <= double(r.rank) + 1e-9);
      CHECK(r.traceY >= -1e-12);
      CHECK(r.traceY <= double(r.rank) + 1e-9);
      CHECK(r.rank <= 4);
    }
  }

  TEST_CASE("the three-piece certificate gives the weaker floor") {
    const auto rep = buildTruncatedRep(5);
    const auto batch = runRandomAudit(rep, threeTwoCertificate(), 10, 4, 3, 3);
    CHECK(batch.violations == 0);
    CHECK(batch.records.front().bound == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("support too large for the translators") {
    const auto rep = buildTruncatedRep(3);
    Mat v = Mat::Zero(static_cast<Eigen::Index>(rep.dim()), 1);
    v(static_cast<Eigen::Index>(rep.dim() - 1), 0) = 1.0;
    CHECK_THROWS_AS(
        qrosenbergAudit(FiniteProjection::fromFrame(v, rep.ball()), f2StandardCertificate(), rep),
        ExactnessError);
  }

  TEST_CASE("commutators of audit projections agree with a dense oracle") {
    // Near-radial shapes have almost equal top singular values.
    const auto rep = buildTruncatedRep(5);
    const auto n = static_cast<Eigen::Index>(rep.dim());
    for (std::size_t t = 0; t < 24; ++t) {
      const auto p = randomProjection(rep.ball(), 4, 5, 2024, t);
      const Mat proj = p.frame() * p.frame().adjoint();
      for (const auto& s : freeGenerators()) {
        Mat u = Mat::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) u.col(j) = rep.op(s).apply(Vec(Mat::Identity(n, n).col(j)));
        const double dense = Eigen::JacobiSVD<Mat>(u * proj - proj * u).singularValues()(0);
        CHECK(std::abs(commutatorNorm(rep, s, p).value - dense) < 1e-9);
      }
    }
  }

  TEST_CASE("random projections are reproducible and supported as requested") {
    const FreeBall ball = freeBall(5);
    for (std::size_t t = 0; t < 12; ++t) {
      const auto p = randomProjection(ball, 3, 5, 99, t);
      const auto q = randomProjection(ball, 3, 5, 99, t);
      CHECK(p.frame() == q.frame());
      CHECK(p.supportRadius() <= 3);
      CHECK(p.rank() >= 1);
      CHECK(p.rank() <= 5);
    }
  }
}

TEST_SUITE("upper search") {
  TEST_CASE("single sphere cannot do better than 1") {
    const auto rep = buildTruncatedRep(3);
    const auto gens = freeGenerators();
    const auto r = cfUpperSearch(1, rep, std::span<const FreeWord>(gens.data(), 2));
    CHECK(r.bestValue == 1.0);
    CHECK(r.converged);
    CHECK(std::abs(*r.certifiedValue - 1.0) < 1e-12);
  }

  TEST_CASE("starting from the uniform profile never makes things worse") {
    const auto rep = buildTruncatedRep(9);
    const std::vector<FreeWord> f{FreeWord(), FreeWord::parse("a"), FreeWord::parse("b")};
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto r = cfUpperSearch(n, rep, f);
      CHECK(r.bestValue <= xiCommutatorClosedForm(n) + 1e-12);
      CHECK(r.bestValue >= 0.5);
      CHECK(std::abs(r.bestValue - *r.certifiedValue) < 1e-9);
    }
  }

  TEST_CASE("twenty spheres") {
    const std::vector<FreeWord> f{FreeWord::parse("a"), FreeWord::parse("b")};
    const auto r = cfUpperSearch(20, f);
    CHECK(r.converged);
    CHECK(r.bestValue <= 0.52);
    CHECK_FALSE(r.certifiedValue.has_value());
    const double c = std::cos(std::numbers::pi / 21.0);
    CHECK(std::abs(r.bestValue - std::sqrt(1.0 - 0.75 * c * c)) < 1e-6);
  }

  TEST_CASE("optimum over a path profile") {
    // For radial vectors the pairing is (√3/2)·β^T A β/|β|^2 with A the path
    // adjacency, maximized by its top eigenvalue cos(π/(d+1)).
    const auto rep = buildTruncatedRep(7);
    const std::vector<FreeWord> f{FreeWord::parse("a"), FreeWord::parse("b")};
    for (std::size_t d = 1; d <= 6; ++d) {
      const auto r = cfUpperSearch(d, rep, f);
      const double c = std::cos(std::numbers::pi / double(d + 1));
      CHECK(std::abs(r.bestValue - std::sqrt(1.0 - 0.75 * c * c)) < 1e-9);
    }
  }

  TEST_CASE("preconditions") {
    const auto rep = buildTruncatedRep(4);
    const std::vector<FreeWord> f{FreeWord::parse("a")};
    CHECK_THROWS_AS(cfUpperSearch(4, rep, f), PreconditionError);
    CHECK_THROWS_AS(cfUpperSearch(0, rep, f), PreconditionError);
    const std::vector<FreeWord> bad{FreeWord::parse("ab")};
    CHECK_THROWS_AS(cfUpperSearch(2, rep, bad), PreconditionError);
    CHECK_THROWS_AS(cfUpperSearch(2, rep, f, std::vector<double>{1.0}), PreconditionError);
  }
}
