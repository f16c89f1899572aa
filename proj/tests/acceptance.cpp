// Acceptance checks. Each criterion prints one line
//   criterion N: PASS|FAIL <details>
// and the process exits non-zero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qdkit/cayley.hpp"
#include "qdkit/errors.hpp"
#include "qdkit/finrep.hpp"
#include "qdkit/mflef.hpp"
#include "qdkit/qdnum.hpp"
#include "qdkit/regrep.hpp"

using namespace qdkit;

namespace {

constexpr double kPairingTol = 1e-10;
constexpr double kCommutatorTol = 1e-8;
constexpr double kFloorTol = 1e-9;
constexpr double kAuditSlackTol = 1e-8;
constexpr double kInducedTol = 1e-12;
constexpr double kMFTol = 1e-9;
constexpr double kLefTol = 1e-12;

constexpr std::uint64_t kAuditSeed = 20'240'417;
constexpr std::uint64_t kTraceSeed = 7'700'113;
constexpr std::size_t kAuditTrials = 200;
constexpr std::size_t kTraceTrials = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string hexDouble(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

// 1 -------------------------------------------------------------------------
Outcome sphereCounts() {
  const Stopwatch clock;
  const auto ball = freeBall(9);
  std::string bad;
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto expected = 4 * static_cast<std::size_t>(std::pow(3, n - 1));
    if (ball.sphereSize(n) != expected) bad += " |S_" + std::to_string(n) + "|";
    std::map<Letter, std::size_t> byFirst;
    for (const auto& w : ball.sphere(n)) ++byFirst[w.first()];
    for (const auto& x : freeGenerators()) {
      if (byFirst[x.first()] != expected / 4) bad += " |S_" + std::to_string(n) + "^" + x.str() + "|";
    }
  }
  const double t = clock.seconds();
  const bool pass = bad.empty() && t < 30.0;
  return {pass, "n=1..9 ball=" + std::to_string(ball.size()) + (bad.empty() ? "" : " mismatches:" + bad) +
                    " time=" + fmt(t, 3) + "s (limit 30s)"};
}

// 2 -------------------------------------------------------------------------
Outcome pairingIdentity() {
  const Stopwatch clock;
  const auto rep = buildTruncatedRep(9);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const auto& x : freeGenerators()) {
      const double expected = std::sqrt(3.0) / 2.0 * (1.0 - 1.0 / static_cast<double>(n));
      worst = std::max(worst, std::abs(pairingNumeric(rep, x, n) - expected));
    }
  }
  const double t = clock.seconds();
  return {worst <= kPairingTol && t < 120.0, "R=9 max|err|=" + fmt(worst, 3) + " (tol " +
                                                 fmt(kPairingTol) + ") time=" + fmt(t, 3) +
                                                 "s (limit 120s)"};
}

// 3 -------------------------------------------------------------------------
Outcome sharpCommutators() {
  const auto rep = buildTruncatedRep(9);
  const FreeWord a = FreeWord::parse("a");
  double worst = 0.0;
  double previous = 2.0;
  bool decreasing = true;
  double v8 = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const Vec xi = xiVector(n, rep.ball()).vector;
    const auto p = FiniteProjection::fromFrame(Mat(xi), rep.ball());
    const double v = commutatorNorm(rep, a, p).value;
    const double expected =
        std::sqrt(1.0 - 0.75 * std::pow(1.0 - 1.0 / static_cast<double>(n), 2.0));
    worst = std::max(worst, std::abs(v - expected));
    decreasing = decreasing && v < previous;
    previous = v;
    if (n == 8) v8 = v;
  }
  const bool fourDecimals = std::abs(v8 - 0.65252) < 5e-5;
  const double at150 = xiCommutatorClosedForm(150);
  const bool pass = worst <= kCommutatorTol && decreasing && fourDecimals && at150 <= 0.51;
  return {pass, "max|err|=" + fmt(worst, 3) + " (tol " + fmt(kCommutatorTol) + ") decreasing=" +
                    (decreasing ? "yes" : "no") + " n=8:" + fmt(v8, 8) +
                    " closed-form n=150:" + fmt(at150, 8) + " (<= 0.51)"};
}

// 4 -------------------------------------------------------------------------
std::string auditReport() {
  const auto rep = buildTruncatedRep(7);
  const auto batch = runRandomAudit(rep, f2StandardCertificate(), kAuditTrials, kAuditSeed, 5, 6);
  std::ostringstream os;
  os << "trials " << batch.trials << " seed " << batch.seed << " violations " << batch.violations
     << " minEpsilon " << hexDouble(batch.minEpsilon) << " minSlack " << hexDouble(batch.minSlack)
     << "\n";
  for (const auto& r : batch.records) {
    os << r.rank << ' ' << hexDouble(r.epsilon) << ' ' << hexDouble(r.traceX) << ' '
       << hexDouble(r.traceY) << ' ' << hexDouble(r.slackX) << ' ' << hexDouble(r.slackY);
    for (double s : r.translateSlack) os << ' ' << hexDouble(s);
    os << ' ' << r.ok << '\n';
  }
  return os.str();
}

Outcome lowerBoundFloor() {
  const Stopwatch clock;
  const auto rep = buildTruncatedRep(7);
  const auto batch = runRandomAudit(rep, f2StandardCertificate(), kAuditTrials, kAuditSeed, 5, 6);
  std::size_t maxRank = 0, maxSupport = 0;
  for (const auto& r : batch.records) maxRank = std::max(maxRank, r.rank);
  const double t = clock.seconds();
  const bool pass = batch.records.size() >= 200 && batch.minEpsilon >= 0.5 - kFloorTol &&
                    batch.minSlack >= -kAuditSlackTol && batch.violations == 0 && maxRank <= 5 &&
                    t < 300.0;
  (void)maxSupport;
  return {pass, "trials=" + std::to_string(batch.records.size()) + " seed=" +
                    std::to_string(kAuditSeed) + " max rank=" + std::to_string(maxRank) +
                    " min eps=" + fmt(batch.minEpsilon, 10) + " (>= 1/2 - " + fmt(kFloorTol) +
                    ") min slack=" + fmt(batch.minSlack, 6) + " (>= -" + fmt(kAuditSlackTol) +
                    ") violations=" + std::to_string(batch.violations) + " time=" + fmt(t, 3) +
                    "s (limit 300s)"};
}

// 5 -------------------------------------------------------------------------
std::string traceReport() {
  const auto t = runTraceLemmaTrials(kTraceTrials, kTraceSeed, 40);
  std::ostringstream os;
  os << "trials " << t.trials << " seed " << t.seed << " violations " << t.violations
     << " maxRatio " << hexDouble(t.maxRatio) << " maxDim " << t.maxDim << "\n";
  return os.str();
}

Outcome traceLemma() {
  const auto t = runTraceLemmaTrials(kTraceTrials, kTraceSeed, 40);
  Mat x = Mat::Zero(2, 2), q = Mat::Zero(2, 2);
  x(0, 0) = 1.0;
  x(1, 1) = -1.0;
  q(0, 0) = 1.0;
  const auto eq = traceLemmaCheck(x, q);
  const bool equality = eq.lhs == eq.bound;
  const bool pass = t.trials == kTraceTrials && t.violations == 0 && t.maxDim <= 40 && equality;
  return {pass, "trials=" + std::to_string(t.trials) + " seed=" + std::to_string(kTraceSeed) +
                    " violations=" + std::to_string(t.violations) + " max ratio=" +
                    fmt(t.maxRatio, 10) + " max dim=" + std::to_string(t.maxDim) +
                    " equality case lhs=" + fmt(eq.lhs) + " bound=" + fmt(eq.bound)};
}

// 6 -------------------------------------------------------------------------
Outcome certificates() {
  const auto cert = f2StandardCertificate();
  std::string failed;
  for (std::size_t r = 0; r <= 8; ++r) {
    if (!verifyCertificate(cert, r).passed()) failed += " R=" + std::to_string(r);
  }
  const auto lb = cfLowerBound(cert);
  const bool half = lb.numerator == 1 && lb.denominator == 2;
  return {failed.empty() && half, std::string("R=0..8 ") + (failed.empty() ? "all pass" : "failed:" + failed) +
                                      " lower bound=" + std::to_string(lb.numerator) + "/" +
                                      std::to_string(lb.denominator)};
}

// 7 -------------------------------------------------------------------------
Outcome inducedLibrary() {
  struct Case {
    std::string name;
    CentralCharacter gamma;
  };
  const auto z4 = std::make_shared<const FiniteGroup>(cyclicGroup(4));
  const auto z6 = std::make_shared<const FiniteGroup>(cyclicGroup(6));
  const auto h3 = std::make_shared<const FiniteGroup>(heisenbergModGroup(3));
  const ElementId c = heisenbergModIndex(3, 0, 0, 1);
  std::vector<Case> cases{
      {"Z/4>Z/2", CentralCharacter(z4, {0, 2}, {Rotation(0, 1), Rotation(1, 2)})},
      {"H3 k=1", CentralCharacter::cyclic(h3, c, 1)},
      {"H3 k=2", CentralCharacter::cyclic(h3, c, 2)},
      {"Z/6>Z/3", CentralCharacter::cyclic(z6, 2, 1)},
  };
  bool pass = true;
  std::string detail;
  for (const auto& cs : cases) {
    const auto rep = induceCentral(cs.gamma);
    const auto sep = checkInducedSeparation(rep, cs.gamma.elements());
    const bool restricted = checkInducedRestriction(rep, cs.gamma);
    bool ok = sep.minNorm >= std::sqrt(2.0) - kInducedTol && restricted;
    if (cs.name == "Z/4>Z/2") ok = ok && std::abs(sep.minNorm - std::sqrt(2.0)) <= kInducedTol;
    pass = pass && ok;
    detail += " " + cs.name + ":min=" + fmt(sep.minNorm, 14) + (restricted ? "" : ",restriction-failed");
  }
  return {pass, "tol " + fmt(kInducedTol) + detail};
}

// 8 -------------------------------------------------------------------------
Outcome heisenbergMF() {
  const Stopwatch clock;
  const HeisenbergInstance inst;
  const auto probes = defaultHeisenbergProbes();
  const auto w = runMF(inst, MFConfig{{3, 9, 27}, {}, kDefaultDimensionCap}, probes);
  bool pass = w.completedStages() == 3;
  double worstN = 0.0;
  std::string detail;
  for (const auto& t : w.probes) {
    if (t.cls == ProbeClass::inN) {
      for (std::size_t s = 0; s < t.stages.size(); ++s) {
        const double n = static_cast<double>(s + 1);
        if (!t.stages[s].computed || !t.stages[s].covered) continue;
        worstN = std::max(worstN, t.stages[s].norm - 1.0 / n);
        pass = pass && t.stages[s].norm <= 1.0 / n + kMFTol;
      }
    } else if (t.cls == ProbeClass::offCenter) {
      bool reached = false;
      for (std::size_t s = 0; s < 2 && s < t.stages.size(); ++s) {
        reached = reached || (t.stages[s].computed && t.stages[s].norm >= std::sqrt(2.0) - kMFTol);
      }
      if (!reached) detail += " " + t.label + ":not-separated-by-stage-2";
      pass = pass && reached;
    }
  }
  const auto rep = separationReport(w);
  pass = pass && rep.ok;
  const double t = clock.seconds();
  pass = pass && t < 60.0;
  return {pass, "moduli 3,9,27 completed=" + std::to_string(w.completedStages()) +
                    " max(N norm - 1/n)=" + fmt(worstN) + " (<= " + fmt(kMFTol) +
                    ") separation=" + (rep.ok ? "ok" : "failed") + detail + " time=" + fmt(t, 3) +
                    "s (limit 60s)"};
}

// 9 -------------------------------------------------------------------------
Outcome abelsMF() {
  const AbelsInstance inst{2};
  const auto probes = defaultAbelsProbes(2);
  const std::size_t stages = 4;
  const auto w = runMF(inst, MFConfig{inst.defaultModuli(stages), {}, kDefaultDimensionCap}, probes);

  std::string detail = "stages:";
  for (const auto& s : w.stages) {
    detail += " m=" + std::to_string(s.modulus) + ":" + toString(s.status);
    if (s.status == StageStatus::gammaFailed) detail += "(" + fmt(s.gamma.discrepancy, 5) + ")";
    if (s.status == StageStatus::skippedCap) detail += "(dim " + std::to_string(s.blockDim) + ")";
  }
  bool pass = w.completedStages() >= 2;
  if (!pass) detail += "; fewer than two stages completed";

  for (const auto& t : w.probes) {
    if (t.label == "x14=1") {
      for (std::size_t s = 0; s < t.stages.size(); ++s) {
        const auto& ps = t.stages[s];
        if (ps.computed && ps.norm > 1.0 / double(s + 1) + kMFTol) {
          pass = false;
          detail += "; x14=1 too large at stage " + std::to_string(s + 1);
        }
      }
    } else if (t.label == "x14=1/p") {
      for (std::size_t s = 0; s < t.stages.size(); ++s) {
        const auto& ps = t.stages[s];
        if (!ps.computed || !ps.separatingCharacter) continue;
        const double bound = ps.etaNorm - 1.0 / double(s + 1);
        if (bound < 1.0 || ps.norm < bound - kMFTol) {
          pass = false;
          detail += "; x14=1/2 below bound at stage " + std::to_string(s + 1);
        }
      }
    } else if (t.label == "x23=1") {
      std::size_t checked = 0;
      for (std::size_t s = 0; s < t.stages.size(); ++s) {
        const auto& ps = t.stages[s];
        if (!ps.computed || ps.centralImage) continue;
        ++checked;
        if (ps.norm < std::sqrt(2.0) - kMFTol) {
          pass = false;
          detail += "; x23=1 below sqrt(2) at stage " + std::to_string(s + 1);
        }
      }
      if (checked == 0) {
        pass = false;
        detail += "; x23=1 never evaluated off the central image";
      }
    }
  }
  return {pass, "p=2 cap=" + std::to_string(kDefaultDimensionCap) + " " + detail};
}

// 10 ------------------------------------------------------------------------
Outcome lef() {
  const Stopwatch clock;
  const auto ball = freeBall(2);
  const std::vector<FreeWord> f(ball.elements().begin(), ball.elements().end());
  const auto w = lefWitnessSearch(f, defaultLefSchedule());
  const auto report = verifyLefWitness(w);
  const auto u = lefToUnitaries(w);
  const double t = clock.seconds();
  const bool pass = report.ok() && u.minPairwiseDistance >= std::sqrt(2.0) - kLefTol && t < 60.0;
  return {pass, "F=B_2 modulus=" + std::to_string(w.modulus) + " |H|=" +
                    std::to_string(w.group->order()) + " verified=" + (report.ok() ? "yes" : "no") +
                    " min distance=" + fmt(u.minPairwiseDistance, 14) + " (>= sqrt2 - " +
                    fmt(kLefTol) + ") time=" + fmt(t, 3) + "s (limit 60s)"};
}

// 11 ------------------------------------------------------------------------
Outcome determinism() {
  const std::string a4 = auditReport(), b4 = auditReport();
  const std::string a5 = traceReport(), b5 = traceReport();
  const bool pass = a4 == b4 && a5 == b5;
  return {pass, "audit report " + std::to_string(a4.size()) + " bytes " +
                    (a4 == b4 ? "identical" : "differs") + ", trace report " +
                    std::to_string(a5.size()) + " bytes " + (a5 == b5 ? "identical" : "differs")};
}

const std::map<int, std::function<Outcome()>>& criteria() {
  static const std::map<int, std::function<Outcome()>> table{
      {1, sphereCounts},  {2, pairingIdentity}, {3, sharpCommutators}, {4, lowerBoundFloor},
      {5, traceLemma},    {6, certificates},    {7, inducedLibrary},   {8, heisenbergMF},
      {9, abelsMF},       {10, lef},            {11, determinism},
  };
  return table;
}

bool run(int id) {
  Outcome o;
  try {
    o = criteria().at(id)();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
            << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      try {
        selected.push_back(std::stoi(argv[++i]));
      } catch (const std::exception&) {
        selected.push_back(0);
      }
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (const auto& [id, fn] : criteria()) selected.push_back(id);
  }
  bool ok = true;
  for (int id : selected) {
    if (!criteria().count(id)) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    ok = run(id) && ok;
  }
  return ok ? 0 : 1;
}
