#include "qdkit/qdnum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qdkit/errors.hpp"

namespace qdkit {

namespace {

double sphereCount(std::size_t i) {
  return i == 0 ? 1.0 : 4.0 * std::pow(3.0, static_cast<double>(i - 1));
}

bool isPureInversePower(const FreeWord& w) {
  const auto& s = w.raw();
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == 'A'; });
}

}  // namespace

// ---------------------------------------------------------------------------

SphereVector xiVector(std::size_t n, const FreeBall& ball) {
  if (n == 0) throw PreconditionError("sphere vector depth must be at least 1");
  if (ball.radius() < n) {
    throw PreconditionError("ball radius " + std::to_string(ball.radius()) +
                            " is smaller than the sphere vector depth " + std::to_string(n));
  }
  SphereVector out;
  out.n = n;
  for (std::size_t i = 1; i <= n; ++i) {
    out.alpha.push_back(1.0 / std::sqrt(sphereCount(i) * static_cast<double>(n)));
  }
  out.vector = Vec::Zero(static_cast<Eigen::Index>(ball.size()));
  for (std::size_t j = ball.prefixSize(0); j < ball.prefixSize(n); ++j) {
    out.vector[static_cast<Eigen::Index>(j)] = out.alpha[ball.lengthAt(j) - 1];
  }
  return out;
}

double pairingClosedForm(std::size_t n) {
  if (n == 0) throw PreconditionError("sphere vector depth must be at least 1");
  return std::sqrt(3.0) / 2.0 * (1.0 - 1.0 / static_cast<double>(n));
}

double radialPairingSum(std::span<const double> coeff) {
  const std::size_t d = coeff.size();
  auto c = [&](std::size_t i) { return i == 0 || i > d ? 0.0 : coeff[i - 1]; };
  double sum = 0.0;
  for (std::size_t i = 1; i <= d; ++i) {
    // S_{i-1} \ S^a_{i-1} has 3^{i-1} elements for i >= 2; S^a_{i+1} has 3^i.
    sum += c(i) * c(i - 1) * (i == 1 ? 1.0 : std::pow(3.0, static_cast<double>(i - 1)));
    sum += c(i) * c(i + 1) * std::pow(3.0, static_cast<double>(i));
  }
  return sum;
}

double xiCommutatorClosedForm(std::size_t n) {
  const double p = pairingClosedForm(n);
  return std::sqrt(1.0 - p * p);
}

double pairingNumeric(const FreeTruncatedRep& rep, const FreeWord& x, std::size_t n) {
  if (x.length() != 1) throw PreconditionError("pairingNumeric expects a generator");
  if (rep.radius() < n + 1) {
    throw PreconditionError("representation radius must be at least n + 1");
  }
  const Vec xi = xiVector(n, rep.ball()).vector;
  return xi.dot(rep.op(x).apply(xi)).real();
}

double rankOneCommutatorNorm(const SparseOperator& u, const Vec& xi) {
  if (static_cast<std::size_t>(xi.size()) != u.dim()) {
    throw PreconditionError("vector and operator dimensions differ");
  }
  if (std::abs(xi.norm() - 1.0) > 1e-10) throw PreconditionError("vector is not a unit vector");
  const double p = std::abs(xi.dot(u.apply(xi)));
  return std::sqrt(std::max(0.0, 1.0 - p * p));
}

// ---------------------------------------------------------------------------

std::vector<FreeWord> ParadoxicalCertificate::translatorSet() const {
  std::vector<FreeWord> out;
  auto add = [&](const FreeWord& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  for (const auto& g : xTranslators) add(g);
  for (const auto& h : yTranslators) add(h);
  return out;
}

std::size_t ParadoxicalCertificate::maxTranslatorLength() const {
  std::size_t r = 0;
  for (const auto& g : xTranslators) r = std::max(r, g.length());
  for (const auto& h : yTranslators) r = std::max(r, h.length());
  return r;
}

ParadoxicalCertificate f2StandardCertificate() {
  ParadoxicalCertificate c;
  c.xPieces.push_back({"X1", [](const FreeWord& w) {
                         return w.isIdentity() || w.first() == Letter::a || isPureInversePower(w);
                       }});
  c.xPieces.push_back({"X2", [](const FreeWord& w) {
                         return !w.isIdentity() && w.first() == Letter::aInv &&
                                !isPureInversePower(w);
                       }});
  c.xTranslators = {FreeWord(), FreeWord::letter(Letter::a)};
  c.yPieces.push_back(
      {"Y1", [](const FreeWord& w) { return !w.isIdentity() && w.first() == Letter::b; }});
  c.yPieces.push_back(
      {"Y2", [](const FreeWord& w) { return !w.isIdentity() && w.first() == Letter::bInv; }});
  c.yTranslators = {FreeWord(), FreeWord::letter(Letter::b)};
  return c;
}

CertificateReport verifyCertificate(const ParadoxicalCertificate& cert, std::size_t radius) {
  CertificateReport rep;
  rep.radius = radius;
  const FreeWord e;
  if (cert.xPieces.size() != cert.xTranslators.size() ||
      cert.yPieces.size() != cert.yTranslators.size()) {
    rep.violations.push_back({"shape", e, "piece and translator counts differ"});
    return rep;
  }
  if (cert.xPieces.empty() || cert.yPieces.empty() || !cert.xTranslators[0].isIdentity() ||
      !cert.yTranslators[0].isIdentity()) {
    rep.violations.push_back({"shape", e, "first translators must be the identity"});
    return rep;
  }
  std::vector<FreeWord> xInv, yInv;
  for (const auto& g : cert.xTranslators) xInv.push_back(g.inverse());
  for (const auto& h : cert.yTranslators) yInv.push_back(h.inverse());

  const FreeBall ball = freeBall(radius);
  for (const FreeWord& w : ball.elements()) {
    ++rep.checked;
    std::size_t inPieces = 0;
    for (const auto& p : cert.xPieces) inPieces += p.contains(w) ? 1 : 0;
    for (const auto& p : cert.yPieces) inPieces += p.contains(w) ? 1 : 0;
    if (inPieces != 1) {
      rep.violations.push_back(
          {"pieces", w, "lies in " + std::to_string(inPieces) + " pieces"});
    }
    std::size_t inX = 0;
    for (std::size_t i = 0; i < xInv.size(); ++i) inX += cert.xPieces[i].contains(xInv[i] * w) ? 1 : 0;
    if (inX != 1) {
      rep.violations.push_back(
          {"x-translates", w, "lies in " + std::to_string(inX) + " sets g_i X_i"});
    }
    std::size_t inY = 0;
    for (std::size_t j = 0; j < yInv.size(); ++j) inY += cert.yPieces[j].contains(yInv[j] * w) ? 1 : 0;
    if (inY != 1) {
      rep.violations.push_back(
          {"y-translates", w, "lies in " + std::to_string(inY) + " sets h_j Y_j"});
    }
  }
  return rep;
}

LowerBound cfLowerBound(const ParadoxicalCertificate& cert, std::size_t verifyRadius) {
  const std::size_t nm = cert.pieceCount();
  if (nm < 3) throw PreconditionError("a paradoxical decomposition needs at least three pieces");
  const auto report = verifyCertificate(cert, verifyRadius);
  if (!report.passed()) {
    const auto& v = report.violations.front();
    throw VerificationError("certificate fails on B_" + std::to_string(verifyRadius) + " (" +
                            v.kind + " at " + v.witness.str() + ": " + v.detail + ")");
  }
  LowerBound lb;
  lb.numerator = 1;
  lb.denominator = static_cast<long>(nm - 2);
  lb.finiteSet = cert.translatorSet();
  return lb;
}

// ---------------------------------------------------------------------------

TraceLemmaResult traceLemmaCheck(const Mat& x, const Mat& q) {
  if (x.rows() != x.cols() || q.rows() != q.cols() || x.rows() != q.rows()) {
    throw PreconditionError("trace lemma inputs must be square of equal size");
  }
  TraceLemmaResult out;
  if (x.rows() == 0) {
    out.ok = true;
    return out;
  }
  const double xScale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * xScale) {
    throw PreconditionError("X is not hermitian");
  }
  if (std::abs(x.trace()) > 1e-10 * xScale) throw PreconditionError("X is not traceless");
  if ((q - q.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw PreconditionError("Q is not hermitian");
  const Eigen::SelfAdjointEigenSolver<Mat> es(q, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-10 || ev.maxCoeff() > 1.0 + 1e-10) {
    throw PreconditionError("spectrum of Q is not contained in [0, 1]");
  }
  const Eigen::JacobiSVD<Mat> svd(x);
  const auto& sv = svd.singularValues();
  out.norm = sv.size() > 0 ? sv[0] : 0.0;
  out.rank = static_cast<std::size_t>((sv.array() > 1e-9).count());
  out.lhs = std::abs((q * x).trace());
  out.bound = 0.5 * static_cast<double>(out.rank) * out.norm;
  out.ok = out.lhs <= out.bound + 1e-9;
  return out;
}

namespace {

Mat randomUnitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Mat> qr(z);
  return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace

TraceLemmaTrials runTraceLemmaTrials(std::size_t trials, std::uint64_t seed, std::size_t maxDim) {
  if (maxDim == 0) throw PreconditionError("maximum dimension must be positive");
  TraceLemmaTrials out;
  out.trials = trials;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto n = static_cast<Eigen::Index>(std::uniform_int_distribution<std::size_t>(1, maxDim)(rng));
    const auto r = static_cast<Eigen::Index>(
        std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(n))(rng));
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < r; ++i) lambda[i] = g(rng);
    if (r > 0) lambda.head(r).array() -= lambda.head(r).mean();
    const Mat u = randomUnitary(n, rng);
    Mat x = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
    x = (x + x.adjoint()) / 2.0;

    // Alternate interior contractions with projections, which sit on the
    // boundary of the constraint set.
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = t % 2 == 0 ? unit(rng) : (unit(rng) < 0.5 ? 0.0 : 1.0);
    const Mat v = randomUnitary(n, rng);
    Mat q = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    q = (q + q.adjoint()) / 2.0;

    const auto res = traceLemmaCheck(x, q);
    out.maxDim = std::max(out.maxDim, static_cast<std::size_t>(n));
    if (!res.ok) ++out.violations;
    if (res.bound > 0) out.maxRatio = std::max(out.maxRatio, res.lhs / res.bound);
  }
  return out;
}

// ---------------------------------------------------------------------------

AuditRecord qrosenbergAudit(const FiniteProjection& p, const ParadoxicalCertificate& cert,
                            const FreeTruncatedRep& rep, const NormOptions& opt) {
  if (p.dim() != rep.dim()) throw PreconditionError("projection lives on a different ball");
  const std::size_t reach = p.supportRadius() + cert.maxTranslatorLength();
  if (reach > rep.radius()) {
    throw ExactnessError("projection support radius " + std::to_string(p.supportRadius()) +
                         " plus translator length exceeds the ball radius " +
                         std::to_string(rep.radius()));
  }
  const auto check = verifyCertificate(cert, reach);
  if (!check.passed()) {
    throw VerificationError("certificate fails at " + check.violations.front().witness.str());
  }

  AuditRecord rec;
  rec.rank = p.rank();
  const double k = static_cast<double>(rec.rank);
  for (const FreeWord& g : cert.translatorSet()) {
    const double c = commutatorNormWord(rep, g, p, opt).value;
    rec.commutators.emplace_back(g, c);
    rec.epsilon = std::max(rec.epsilon, c);
  }

  const Mat& v = p.frame();
  const FreeBall& ball = rep.ball();
  const std::size_t limit = ball.prefixSize(reach);
  Eigen::VectorXd rowWeight(static_cast<Eigen::Index>(limit));
  for (std::size_t t = 0; t < limit; ++t) rowWeight[static_cast<Eigen::Index>(t)] = v.row(static_cast<Eigen::Index>(t)).squaredNorm();

  auto traceOver = [&](const std::vector<Piece>& pieces) {
    double s = 0.0;
    for (std::size_t t = 0; t < limit; ++t) {
      for (const auto& piece : pieces) {
        if (piece.contains(ball[t])) {
          s += rowWeight[static_cast<Eigen::Index>(t)];
          break;
        }
      }
    }
    return s;
  };
  rec.traceX = traceOver(cert.xPieces);
  rec.traceY = traceOver(cert.yPieces);
  const double n = static_cast<double>(cert.xPieces.size());
  const double m = static_cast<double>(cert.yPieces.size());
  rec.slackX = rec.traceX + (n - 1.0) * k * rec.epsilon - k;
  rec.slackY = rec.traceY + (m - 1.0) * k * rec.epsilon - k;

  // Tr(P_{gA}(P - λ_g P λ_g^*)) with P_{gA} diagonal on the ball basis.
  auto translateSlack = [&](const Piece& piece, const FreeWord& g) {
    Mat moved(v.rows(), v.cols());
    for (Eigen::Index j = 0; j < v.cols(); ++j) moved.col(j) = applyWord(rep, g, v.col(j));
    const FreeWord gInv = g.inverse();
    double tr = 0.0;
    for (std::size_t t = 0; t < limit; ++t) {
      if (!piece.contains(gInv * ball[t])) continue;
      const auto ti = static_cast<Eigen::Index>(t);
      tr += rowWeight[ti] - moved.row(ti).squaredNorm();
    }
    return k * rec.epsilon - std::abs(tr);
  };
  for (std::size_t i = 0; i < cert.xPieces.size(); ++i) {
    rec.translateSlack.push_back(translateSlack(cert.xPieces[i], cert.xTranslators[i]));
  }
  for (std::size_t j = 0; j < cert.yPieces.size(); ++j) {
    rec.translateSlack.push_back(translateSlack(cert.yPieces[j], cert.yTranslators[j]));
  }

  rec.bound = 1.0 / static_cast<double>(cert.pieceCount() - 2);
  rec.conclusionSlack = rec.epsilon - rec.bound;
  rec.ok = rec.slackX >= -kAuditSlack && rec.slackY >= -kAuditSlack &&
           rec.conclusionSlack >= -kAuditSlack;
  for (double s : rec.translateSlack) rec.ok = rec.ok && s >= -kAuditSlack;
  return rec;
}

FiniteProjection randomProjection(const FreeBall& ball, std::size_t supportRadius,
                                  std::size_t maxRank, std::uint64_t seed,
                                  std::size_t trialIndex) {
  if (supportRadius > ball.radius()) throw PreconditionError("support radius exceeds the ball");
  if (maxRank == 0) throw PreconditionError("maximum rank must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trialIndex)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto gauss = [&] { return Complex(g(rng), g(rng)); };

  const auto dim = static_cast<Eigen::Index>(ball.size());
  std::vector<Vec> vecs;
  switch (trialIndex % 3) {
    case 0: {  // generic vectors on a random subset of a ball
      const std::size_t r = pick(0, supportRadius);
      const double density = 0.2 + 0.8 * unit(rng);
      std::vector<std::size_t> support;
      for (std::size_t t = 0; t < ball.prefixSize(r); ++t) {
        if (unit(rng) < density) support.push_back(t);
      }
      if (support.empty()) support.push_back(0);
      const std::size_t k = pick(1, std::min(maxRank, support.size()));
      for (std::size_t c = 0; c < k; ++c) {
        Vec x = Vec::Zero(dim);
        for (std::size_t t : support) x[static_cast<Eigen::Index>(t)] = gauss();
        vecs.push_back(std::move(x));
      }
      break;
    }
    case 1: {  // perturbed radial vector plus a few local directions
      const std::size_t d = pick(std::min<std::size_t>(1, supportRadius), supportRadius);
      std::vector<double> beta(d);
      for (double& b : beta) b = 0.2 + unit(rng);
      Vec x = radialVector(beta, ball);
      const double noise = 0.1 * unit(rng);
      for (std::size_t t = 0; t < ball.prefixSize(d); ++t) {
        x[static_cast<Eigen::Index>(t)] += noise * gauss() / std::sqrt(static_cast<double>(ball.prefixSize(d)));
      }
      vecs.push_back(std::move(x));
      const std::size_t extra = pick(0, maxRank - 1);
      const std::size_t local = ball.prefixSize(std::min<std::size_t>(1, supportRadius));
      for (std::size_t c = 0; c < extra; ++c) {
        Vec y = Vec::Zero(dim);
        for (std::size_t t = 0; t < local; ++t) y[static_cast<Eigen::Index>(t)] = gauss();
        vecs.push_back(std::move(y));
      }
      break;
    }
    default: {  // dense on a small ball
      const std::size_t r = pick(0, std::min<std::size_t>(2, supportRadius));
      const std::size_t size = ball.prefixSize(r);
      const std::size_t k = pick(1, std::min(maxRank, size));
      for (std::size_t c = 0; c < k; ++c) {
        Vec x = Vec::Zero(dim);
        for (std::size_t t = 0; t < size; ++t) x[static_cast<Eigen::Index>(t)] = gauss();
        vecs.push_back(std::move(x));
      }
      break;
    }
  }
  Mat m(dim, static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t c = 0; c < vecs.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = vecs[c];
  return FiniteProjection::fromSpanningVectors(m, ball);
}

AuditBatch runRandomAudit(const FreeTruncatedRep& rep, const ParadoxicalCertificate& cert,
                          std::size_t trials, std::uint64_t seed, std::size_t maxRank,
                          std::size_t supportRadius, const NormOptions& opt) {
  AuditBatch batch;
  batch.trials = trials;
  batch.seed = seed;
  batch.minEpsilon = std::numeric_limits<double>::infinity();
  batch.minSlack = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto p = randomProjection(rep.ball(), supportRadius, maxRank, seed, t);
    auto rec = qrosenbergAudit(p, cert, rep, opt);
    double gen = 0.0;
    for (const auto& [g, c] : rec.commutators) {
      if (g.length() == 1) gen = std::max(gen, c);
    }
    batch.minEpsilon = std::min(batch.minEpsilon, gen);
    batch.minSlack = std::min({batch.minSlack, rec.slackX, rec.slackY, rec.conclusionSlack});
    for (double s : rec.translateSlack) batch.minSlack = std::min(batch.minSlack, s);
    if (!rec.ok) ++batch.violations;
    batch.records.push_back(std::move(rec));
  }
  return batch;
}

// ---------------------------------------------------------------------------

Vec radialVector(std::span<const double> profile, const FreeBall& ball) {
  const std::size_t d = profile.size();
  if (d > ball.radius()) throw PreconditionError("profile is longer than the ball radius");
  Vec x = Vec::Zero(static_cast<Eigen::Index>(ball.size()));
  for (std::size_t t = ball.prefixSize(0); t < ball.prefixSize(d); ++t) {
    const std::size_t i = ball.lengthAt(t);
    x[static_cast<Eigen::Index>(t)] = profile[i - 1] / std::sqrt(sphereCount(i));
  }
  const double nx = x.norm();
  if (nx == 0.0) throw PreconditionError("profile is zero");
  return x / nx;
}

namespace {

// Pairing <λ_x ξβ, ξβ> for the unit radial vector with profile β.
double profilePairing(const std::vector<double>& beta) {
  std::vector<double> c(beta.size());
  double nn = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    c[i] = beta[i] / std::sqrt(sphereCount(i + 1));
    nn += beta[i] * beta[i];
  }
  return radialPairingSum(c) / nn;
}

double profileObjective(const std::vector<double>& beta, std::span<const FreeWord> f) {
  const double p = profilePairing(beta);
  double v = 0.0;
  for (const auto& x : f) {
    if (x.length() == 1) v = std::max(v, std::sqrt(std::max(0.0, 1.0 - p * p)));
  }
  return v;
}

void normalize(std::vector<double>& beta) {
  double nn = 0.0;
  for (double b : beta) nn += b * b;
  nn = std::sqrt(nn);
  for (double& b : beta) b /= nn;
}

}  // namespace

UpperSearchResult cfUpperSearch(std::size_t profileDim, std::span<const FreeWord> finiteSet,
                                std::optional<std::vector<double>> start, std::size_t maxSweeps) {
  if (profileDim == 0) throw PreconditionError("profile dimension must be at least 1");
  for (const auto& x : finiteSet) {
    if (x.length() > 1) {
      throw PreconditionError("the radial closed form covers generators and the identity only");
    }
  }
  std::vector<double> beta = start.value_or(
      std::vector<double>(profileDim, 1.0 / std::sqrt(static_cast<double>(profileDim))));
  if (beta.size() != profileDim) throw PreconditionError("start profile has the wrong length");
  normalize(beta);

  // For radial vectors <λ_x ξ, ξ> = (√3/2) Σ β_i β_{i+1} / Σ β_i^2 for every
  // generator x. Each coordinate step maximizes (A + B t)/(C + t^2) in t.
  const double w = std::sqrt(3.0) / 2.0;
  UpperSearchResult out;
  for (out.sweeps = 0; out.sweeps < maxSweeps && !out.converged;) {
    ++out.sweeps;
    const std::vector<double> before = beta;
    for (std::size_t i = 0; i < profileDim; ++i) {
      const double left = i > 0 ? beta[i - 1] : 0.0;
      const double right = i + 1 < profileDim ? beta[i + 1] : 0.0;
      double a = 0.0, c = 0.0;
      for (std::size_t j = 0; j + 1 < profileDim; ++j) {
        if (j != i && j + 1 != i) a += w * beta[j] * beta[j + 1];
      }
      for (std::size_t j = 0; j < profileDim; ++j) {
        if (j != i) c += beta[j] * beta[j];
      }
      const double b = w * (left + right);
      if (b != 0.0) beta[i] = (-a + std::sqrt(a * a + b * b * c)) / b;
    }
    normalize(beta);
    double step = 0.0;
    for (std::size_t i = 0; i < profileDim; ++i) step = std::max(step, std::abs(beta[i] - before[i]));
    out.converged = step <= 1e-6;
  }
  out.profile = beta;
  out.bestValue = profileObjective(beta, finiteSet);
  return out;
}

UpperSearchResult cfUpperSearch(std::size_t profileDim, const FreeTruncatedRep& rep,
                                std::span<const FreeWord> finiteSet,
                                std::optional<std::vector<double>> start, std::size_t maxSweeps) {
  if (profileDim + 1 > rep.radius()) {
    throw PreconditionError("profile dimension must be at most the representation radius minus 1");
  }
  auto out = cfUpperSearch(profileDim, finiteSet, std::move(start), maxSweeps);
  const Vec xi = radialVector(out.profile, rep.ball());
  double certified = 0.0;
  for (const auto& x : finiteSet) {
    if (x.length() == 1) certified = std::max(certified, rankOneCommutatorNorm(rep.op(x), xi));
  }
  out.certifiedValue = certified;
  return out;
}

}  // namespace qdkit
