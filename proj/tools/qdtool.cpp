#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdkit/cayley.hpp"
#include "qdkit/element_io.hpp"
#include "qdkit/errors.hpp"
#include "qdkit/finrep.hpp"
#include "qdkit/mflef.hpp"
#include "qdkit/qdnum.hpp"
#include "qdkit/regrep.hpp"

using json = nlohmann::ordered_json;
using namespace qdkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Reports carry 12 significant digits; rounding before serialization makes
// the shortest round-trip representation at most that long.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string csvNum(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json numArray(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

json report(const std::string& command) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

struct Emitted {
  std::string text;
  int status = kExitOk;
};

Emitted emitJson(const json& j, bool ok) { return {j.dump(2) + "\n", ok ? kExitOk : kExitCheckFailed}; }

// Usage-level failures detected after parsing (bad files, unknown groups).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> splitList(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parseUnsigned(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw UsageError("invalid " + what + ": '" + s + "'");
  return v;
}

// "3,5,7" or "3..64".
std::vector<std::uint64_t> parseModuli(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parseUnsigned(s.substr(0, dots), "modulus range");
    const auto hi = parseUnsigned(s.substr(dots + 2), "modulus range");
    if (lo < 2 || hi < lo) throw UsageError("invalid modulus range '" + s + "'");
    for (auto m = lo; m <= hi; ++m) out.push_back(m);
    return out;
  }
  for (const auto& item : splitList(s)) out.push_back(parseUnsigned(item, "modulus"));
  if (out.empty()) throw UsageError("empty modulus list");
  return out;
}

std::vector<std::string> readLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return readElementLines(in);
}

// ---------------------------------------------------------------------------
// spheres

struct SpheresArgs {
  std::size_t radius = 5;
  std::string format = "csv";
};

Emitted runSpheres(const SpheresArgs& a) {
  const auto ball = freeBall(a.radius);
  std::vector<std::size_t> firstA(a.radius + 1, 0);
  for (std::size_t n = 1; n <= a.radius; ++n) {
    for (const auto& w : ball.sphere(n)) firstA[n] += w.first() == Letter::a ? 1 : 0;
  }
  if (a.format == "csv") {
    std::string out = "n,size,sizeFirstLetterA\n";
    for (std::size_t n = 0; n <= a.radius; ++n) {
      out += std::to_string(n) + "," + std::to_string(ball.sphereSize(n)) + "," +
             std::to_string(firstA[n]) + "\n";
    }
    return {out, kExitOk};
  }
  json j = report("spheres");
  j["radius"] = a.radius;
  j["rows"] = json::array();
  for (std::size_t n = 0; n <= a.radius; ++n) {
    j["rows"].push_back({{"n", n}, {"size", ball.sphereSize(n)}, {"sizeFirstLetterA", firstA[n]}});
  }
  return emitJson(j, true);
}

// ---------------------------------------------------------------------------
// xi

constexpr std::size_t kMaxNumericRadius = 11;

struct XiArgs {
  std::size_t n = 8;
  double tolerance = 1e-8;
};

Emitted runXi(const XiArgs& a) {
  if (a.n == 0) throw UsageError("--n must be at least 1");
  json j = report("xi");
  j["n"] = a.n;
  const double closed = xiCommutatorClosedForm(a.n);
  j["closedForm"] = num(closed);
  j["pairingClosedForm"] = num(pairingClosedForm(a.n));
  j["tolerance"] = num(a.tolerance);
  bool ok = true;
  if (a.n + 1 <= kMaxNumericRadius) {
    const auto rep = buildTruncatedRep(a.n + 1);
    const auto xi = xiVector(a.n, rep.ball());
    const double numeric = rankOneCommutatorNorm(rep.op(FreeWord::parse("a")), xi.vector);
    j["radius"] = a.n + 1;
    j["alpha"] = numArray(xi.alpha);
    j["pairingNumeric"] = num(pairingNumeric(rep, FreeWord::parse("a"), a.n));
    j["value"] = num(numeric);
    ok = std::abs(numeric - closed) <= a.tolerance;
  } else {
    j["radius"] = nullptr;
    j["value"] = num(closed);
    j["note"] = "closed form only; the ball of radius n+1 is too large to build";
  }
  j["ok"] = ok;
  return emitJson(j, ok);
}

// ---------------------------------------------------------------------------
// commutator

struct CommutatorArgs {
  std::size_t radius = 0;
  std::optional<std::size_t> xiN;
  std::string projectionFile;
  std::string generator = "a";
  double tol = 1e-10;
};

// Projection file: one line per basis word, "word c_1 ... c_k"; the k
// columns span the range of P and are orthonormalized on reading.
FiniteProjection readProjection(const std::string& path, const FreeBall& ball) {
  const auto lines = readLines(path);
  if (lines.empty()) throw UsageError("projection file " + path + " is empty");
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  std::size_t k = 0;
  for (const auto& line : lines) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    const FreeWord w = parseFreeWord(word);
    const auto idx = ball.find(w);
    if (!idx) throw UsageError("word " + w.str() + " lies outside the ball of radius " + std::to_string(ball.radius()));
    std::vector<double> cs;
    double c = 0.0;
    while (ls >> c) cs.push_back(c);
    if (!ls.eof()) throw UsageError("malformed coefficient in line: " + line);
    if (cs.empty() || (k != 0 && cs.size() != k)) throw UsageError("inconsistent column count in line: " + line);
    k = cs.size();
    rows.emplace_back(*idx, std::move(cs));
  }
  Mat v = Mat::Zero(static_cast<Eigen::Index>(ball.size()), static_cast<Eigen::Index>(k));
  for (const auto& [i, cs] : rows) {
    for (std::size_t c = 0; c < k; ++c) v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = cs[c];
  }
  return FiniteProjection::fromSpanningVectors(v, ball);
}

Emitted runCommutator(const CommutatorArgs& a) {
  const FreeWord s = FreeWord::parse(a.generator);
  if (s.length() != 1) throw UsageError("--generator must be one of a, b, A, B");
  const auto rep = buildTruncatedRep(a.radius);
  const FiniteProjection p = a.xiN ? FiniteProjection::fromFrame(Mat(xiVector(*a.xiN, rep.ball()).vector), rep.ball())
                                   : readProjection(a.projectionFile, rep.ball());
  NormOptions opt;
  opt.tol = a.tol;
  const auto c = commutatorNorm(rep, s, p, opt);
  json j = report("commutator");
  j["value"] = num(c.value);
  j["exact"] = c.exactOnFullSpace;
  j["radius"] = a.radius;
  j["generator"] = s.str();
  j["rank"] = p.rank();
  j["supportRadius"] = p.supportRadius();
  j["tolerance"] = num(a.tol);
  return emitJson(j, true);
}

// ---------------------------------------------------------------------------
// paradox verify, cf-lower, cf-upper

Emitted runParadoxVerify(std::size_t radius) {
  const auto r = verifyCertificate(f2StandardCertificate(), radius);
  json j = report("paradox verify");
  j["radius"] = radius;
  j["checked"] = r.checked;
  j["value"] = r.passed();
  j["violations"] = json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"kind", v.kind}, {"witness", v.witness.str()}, {"detail", v.detail}});
  }
  if (!r.passed()) j["witness"] = r.violations.front().witness.str();
  return emitJson(j, r.passed());
}

Emitted runCfLower(std::size_t radius) {
  const auto cert = f2StandardCertificate();
  json j = report("cf-lower");
  const auto lb = cfLowerBound(cert, radius);
  j["bound"] = num(lb.value());
  j["value"] = num(lb.value());
  j["numerator"] = lb.numerator;
  j["denominator"] = lb.denominator;
  j["pieces"] = cert.pieceCount();
  j["finiteSet"] = json::array();
  for (const auto& w : lb.finiteSet) j["finiteSet"].push_back(w.str());
  j["verifiedRadius"] = radius;
  return emitJson(j, true);
}

struct CfUpperArgs {
  std::size_t dim = 8;
  std::size_t maxSweeps = 1'000'000;
};

constexpr std::size_t kMaxCertifyDim = 8;

Emitted runCfUpper(const CfUpperArgs& a) {
  const std::vector<FreeWord> f{FreeWord(), FreeWord::parse("a"), FreeWord::parse("b")};
  const auto r = a.dim <= kMaxCertifyDim
                     ? cfUpperSearch(a.dim, buildTruncatedRep(a.dim + 1), f, std::nullopt, a.maxSweeps)
                     : cfUpperSearch(a.dim, f, std::nullopt, a.maxSweeps);
  json j = report("cf-upper");
  j["dim"] = a.dim;
  j["value"] = num(r.bestValue);
  j["tolerance"] = num(1e-6);
  j["profile"] = numArray(r.profile);
  j["sweeps"] = r.sweeps;
  j["converged"] = r.converged;
  j["certifiedValue"] = r.certifiedValue ? num(*r.certifiedValue) : json(nullptr);
  const double lower = cfLowerBound(f2StandardCertificate()).value();
  j["lowerBound"] = num(lower);
  const bool ok = r.bestValue >= lower - 1e-9;
  j["ok"] = ok;
  return emitJson(j, ok);
}

// ---------------------------------------------------------------------------
// trace-lemma, qr-audit

struct TraceArgs {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t maxDim = 40;
};

Emitted runTraceLemma(const TraceArgs& a) {
  const auto t = runTraceLemmaTrials(a.trials, a.seed, a.maxDim);
  json j = report("trace-lemma");
  j["trials"] = t.trials;
  j["seed"] = t.seed;
  j["violations"] = t.violations;
  j["value"] = num(t.maxRatio);
  j["tolerance"] = num(1e-9);
  j["maxDim"] = t.maxDim;
  return emitJson(j, t.violations == 0);
}

struct AuditArgs {
  std::size_t radius = 7;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::size_t maxRank = 5;
  std::size_t support = 6;
  bool records = false;
};

Emitted runQrAudit(const AuditArgs& a) {
  const auto rep = buildTruncatedRep(a.radius);
  const auto cert = f2StandardCertificate();
  const auto b = runRandomAudit(rep, cert, a.trials, a.seed, a.maxRank, a.support);
  json j = report("qr-audit");
  j["radius"] = a.radius;
  j["trials"] = b.trials;
  j["seed"] = b.seed;
  j["maxRank"] = a.maxRank;
  j["supportRadius"] = a.support;
  j["bound"] = num(1.0 / static_cast<double>(cert.pieceCount() - 2));
  j["value"] = num(b.minEpsilon);
  j["minSlack"] = num(b.minSlack);
  j["tolerance"] = num(kAuditSlack);
  j["violations"] = b.violations;
  if (a.records) {
    j["records"] = json::array();
    for (const auto& r : b.records) {
      j["records"].push_back({{"rank", r.rank},
                              {"epsilon", num(r.epsilon)},
                              {"traceX", num(r.traceX)},
                              {"traceY", num(r.traceY)},
                              {"slackX", num(r.slackX)},
                              {"slackY", num(r.slackY)},
                              {"translateSlack", numArray(r.translateSlack)},
                              {"conclusionSlack", num(r.conclusionSlack)},
                              {"ok", r.ok}});
    }
  }
  return emitJson(j, b.violations == 0);
}

// ---------------------------------------------------------------------------
// induce

struct InduceArgs {
  std::string group;
  std::string subgroup = "center";
  std::int64_t character = 1;
};

// Table file: first line the order n, then n rows of n element indices;
// element 0 must be the identity.
FiniteGroup readGroupTable(const std::string& path) {
  const auto lines = readLines(path);
  if (lines.empty()) throw UsageError("group table " + path + " is empty");
  GroupTable t;
  t.order = parseUnsigned(lines[0], "group order");
  if (lines.size() != t.order + 1) throw UsageError("group table needs " + std::to_string(t.order) + " rows");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string tok;
    std::size_t count = 0;
    while (ls >> tok) {
      t.table.push_back(static_cast<ElementId>(parseUnsigned(tok, "table entry")));
      ++count;
    }
    if (count != t.order) throw UsageError("row " + std::to_string(i) + " of the group table has the wrong length");
  }
  for (auto v : t.table) {
    if (v >= t.order) throw UsageError("table entry out of range");
  }
  return FiniteGroup(std::move(t));
}

std::shared_ptr<const FiniteGroup> makeGroup(const std::string& desc) {
  const auto colon = desc.find(':');
  if (colon == std::string::npos) throw UsageError("--group expects cyclic:N, heisenberg-mod:p or table:FILE");
  const std::string kind = desc.substr(0, colon), arg = desc.substr(colon + 1);
  if (kind == "cyclic") {
    const auto n = parseUnsigned(arg, "cyclic order");
    if (n == 0) throw UsageError("cyclic order must be positive");
    return std::make_shared<const FiniteGroup>(cyclicGroup(n));
  }
  if (kind == "heisenberg-mod") {
    const auto p = parseUnsigned(arg, "Heisenberg modulus");
    if (p < 2) throw UsageError("Heisenberg modulus must be at least 2");
    return std::make_shared<const FiniteGroup>(heisenbergModGroup(static_cast<std::uint32_t>(p)));
  }
  if (kind == "table") return std::make_shared<const FiniteGroup>(readGroupTable(arg));
  throw UsageError("unknown group kind '" + kind + "'");
}

Emitted runInduce(const InduceArgs& a) {
  const auto g = makeGroup(a.group);
  std::vector<ElementId> h;
  if (a.subgroup == "center") {
    h = g->center();
  } else {
    std::vector<ElementId> gens;
    for (const auto& item : splitList(a.subgroup)) {
      const auto x = parseUnsigned(item, "subgroup element");
      if (x >= g->order()) throw UsageError("subgroup element " + item + " is not in the group");
      gens.push_back(static_cast<ElementId>(x));
    }
    h = g->generatedSubgroup(gens);
  }
  std::optional<ElementId> generator;
  for (ElementId x : h) {
    if (g->elementOrder(x) == h.size()) {
      generator = x;
      break;
    }
  }
  if (!generator) throw UsageError("the subgroup is not cyclic; --char needs a cyclic subgroup");
  const auto gamma = CentralCharacter::cyclic(g, *generator, a.character);
  const auto rep = induceCentral(gamma);
  const auto sep = checkInducedSeparation(rep, gamma.elements());
  const bool restricted = checkInducedRestriction(rep, gamma);

  json j = report("induce");
  j["group"] = a.group;
  j["order"] = g->order();
  j["subgroup"] = h;
  j["generator"] = *generator;
  j["character"] = a.character;
  j["dim"] = rep.dim();
  j["minSeparation"] = num(sep.minNorm);
  j["argmin"] = sep.argmin ? json(*sep.argmin) : json(nullptr);
  j["value"] = num(sep.minNorm);
  j["tolerance"] = num(1e-12);
  j["restrictionOk"] = restricted;
  // With H = F the separation is vacuous and minNorm stays infinite.
  const bool ok = restricted && (sep.ok || !sep.argmin);
  j["ok"] = ok;
  return emitJson(j, ok);
}

// ---------------------------------------------------------------------------
// mf run

struct MfArgs {
  std::string instance = "heisenberg";
  std::uint32_t prime = 2;
  std::string moduli;
  std::optional<std::size_t> stages;
  std::string characters;
  std::string probesFile;
  std::size_t cap = kDefaultDimensionCap;
  std::string format = "json";
};

// Probe file: "label entries..." per line, entries as in element files.
template <class E, class Parse>
std::vector<Probe<E>> readProbes(const std::string& path, Parse parse) {
  std::vector<Probe<E>> out;
  for (const auto& line : readLines(path)) {
    const auto space = line.find_first_of(" \t");
    if (space == std::string::npos) throw UsageError("probe line needs a label and an element: " + line);
    out.push_back({line.substr(0, space), parse(line.substr(space + 1))});
  }
  if (out.empty()) throw UsageError("probe file " + path + " lists no probes");
  return out;
}

Emitted formatMf(const MFWitnessSequence& w, const std::string& format) {
  std::optional<SeparationReport> sep;
  if (w.stages.size() >= 3) sep = separationReport(w);
  const bool ok = !sep || sep->ok;

  if (format == "csv") {
    std::string out = "probe,class,stage,modulus,status,computed,norm,etaNorm,covered,centralImage,lowerBound\n";
    for (std::size_t k = 0; k < w.probes.size(); ++k) {
      const auto& t = w.probes[k];
      for (std::size_t s = 0; s < t.stages.size(); ++s) {
        const auto& ps = t.stages[s];
        const double lb = sep ? sep->probes[k].lowerBounds[s] : std::nan("");
        out += t.label + "," + toString(t.cls) + "," + std::to_string(s + 1) + "," +
               std::to_string(w.stages[s].modulus) + "," + toString(w.stages[s].status) + "," +
               (ps.computed ? "1" : "0") + "," + csvNum(ps.norm) + "," + csvNum(ps.etaNorm) + "," +
               (ps.covered ? "1" : "0") + "," + (ps.centralImage ? "1" : "0") + "," + csvNum(lb) + "\n";
      }
    }
    return {out, ok ? kExitOk : kExitCheckFailed};
  }

  json j = report("mf run");
  j["instance"] = w.instance;
  if (w.instance == "abels") j["prime"] = w.prime;
  j["moduli"] = w.config.moduli;
  j["characters"] = w.config.characterParams;
  j["dimensionCap"] = w.config.dimensionCap;
  j["instanceCheck"] = {{"nested", w.instanceReport.nested},
                        {"commutationFailures", w.instanceReport.commutationFailures},
                        {"containmentFailures", w.instanceReport.containmentFailures}};
  j["completedStages"] = w.completedStages();
  j["stages"] = json::array();
  for (const auto& s : w.stages) {
    j["stages"].push_back({{"index", s.index},
                           {"modulus", s.modulus},
                           {"status", toString(s.status)},
                           {"blockDim", s.blockDim},
                           {"exhaustionSize", s.exhaustionSize},
                           {"gammaParams", s.gamma.params},
                           {"discrepancy", num(s.gamma.discrepancy)},
                           {"tolerance", num(s.gamma.tolerance)},
                           {"note", s.note}});
  }
  j["probes"] = json::array();
  for (const auto& t : w.probes) {
    json stages = json::array();
    for (const auto& ps : t.stages) {
      stages.push_back({{"computed", ps.computed},
                        {"norm", num(ps.norm)},
                        {"etaNorm", num(ps.etaNorm)},
                        {"covered", ps.covered},
                        {"centralImage", ps.centralImage}});
    }
    j["probes"].push_back({{"label", t.label}, {"element", t.element}, {"class", toString(t.cls)}, {"stages", stages}});
  }
  if (sep) {
    json probes = json::array();
    for (const auto& v : sep->probes) {
      probes.push_back({{"label", v.label},
                        {"ok", v.ok},
                        {"checkedStages", v.checkedStages},
                        {"lowerBounds", numArray(v.lowerBounds)},
                        {"message", v.message}});
    }
    j["separation"] = {{"ok", sep->ok}, {"tolerance", num(kSeparationSlack)}, {"probes", probes}};
  } else {
    j["separation"] = nullptr;
  }
  return emitJson(j, ok);
}

template <class Instance, class Parse>
Emitted runMfFor(const Instance& inst, const MfArgs& a, std::vector<Probe<typename Instance::Element>> defaults,
                 Parse parse) {
  MFConfig config;
  config.dimensionCap = a.cap;
  if (!a.moduli.empty()) {
    config.moduli = parseModuli(a.moduli);
    if (a.stages) {
      if (*a.stages > config.moduli.size()) throw UsageError("--stages exceeds the number of moduli");
      config.moduli.resize(*a.stages);
    }
  } else {
    config.moduli = inst.defaultModuli(a.stages.value_or(3));
  }
  if (config.moduli.empty()) throw UsageError("at least one stage is required");
  for (const auto& c : splitList(a.characters)) config.characterParams.push_back(std::stoll(c));
  const auto probes =
      a.probesFile.empty() ? defaults : readProbes<typename Instance::Element>(a.probesFile, parse);
  return formatMf(runMF(inst, config, probes), a.format);
}

Emitted runMf(const MfArgs& a) {
  if (a.instance == "heisenberg") {
    return runMfFor(HeisenbergInstance{}, a, defaultHeisenbergProbes(),
                    [](const std::string& s) { return parseHeisenbergElement(s); });
  }
  const AbelsInstance inst{a.prime};
  return runMfFor(inst, a, defaultAbelsProbes(a.prime),
                  [p = a.prime](const std::string& s) { return parseAbelsElement(s, p); });
}

// ---------------------------------------------------------------------------
// lef

struct LefArgs {
  std::string instance = "free2";
  std::size_t radius = 2;
  std::string schedule = "3..64";
  std::string witnessFile;
  std::string checkFile;
};

json lefSummary(const LEFWitness& w, const LefReport& r, bool& ok) {
  json j = report("lef");
  j["instance"] = "free2";
  j["modulus"] = w.modulus;
  j["groupOrder"] = w.group->order();
  j["finiteSetSize"] = w.finiteSet.size();
  j["injectivityViolations"] = r.injectivityViolations.size();
  j["multiplicativityViolations"] = r.multiplicativityViolations.size();
  j["verified"] = r.ok();
  ok = r.ok();
  if (r.ok()) {
    const auto u = lefToUnitaries(w);
    j["value"] = num(u.minPairwiseDistance);
    j["minPairwiseDistance"] = num(u.minPairwiseDistance);
    if (u.argmin) j["argmin"] = {u.argmin->first.str(), u.argmin->second.str()};
    j["tolerance"] = num(1e-12);
    ok = u.ok;
  }
  j["ok"] = ok;
  return j;
}

Emitted runLef(const LefArgs& a) {
  bool ok = false;
  if (!a.checkFile.empty()) {
    std::ifstream in(a.checkFile);
    if (!in) throw UsageError("cannot open " + a.checkFile);
    const auto w = readLefWitness(in);
    json j = lefSummary(w, verifyLefWitness(w), ok);
    j["witnessFile"] = a.checkFile;
    return emitJson(j, ok);
  }
  const auto ball = freeBall(a.radius);
  const std::vector<FreeWord> f(ball.elements().begin(), ball.elements().end());
  const auto schedule = parseModuli(a.schedule);
  const auto w = lefWitnessSearch(f, schedule);
  json j = lefSummary(w, verifyLefWitness(w), ok);
  j["radius"] = a.radius;
  if (!a.witnessFile.empty()) {
    std::ofstream out(a.witnessFile);
    if (!out) throw UsageError("cannot write " + a.witnessFile);
    writeLefWitness(out, w);
    j["witnessFile"] = a.witnessFile;
  }
  return emitJson(j, ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdtool: commutator moduli, paradoxical bounds and finite-quotient witnesses"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file with the same keys");
  std::string outputPath;
  app.add_option("-o,--output", outputPath, "Write the report to this file instead of stdout");

  std::function<Emitted()> action;

  SpheresArgs spheres;
  auto* cSpheres = app.add_subcommand("spheres", "Sphere sizes of the free group on a, b");
  cSpheres->add_option("--radius", spheres.radius)->check(CLI::Range(0, 14));
  cSpheres->add_option("--format", spheres.format)->check(CLI::IsMember({"csv", "json"}));
  cSpheres->callback([&] { action = [&] { return runSpheres(spheres); }; });

  XiArgs xi;
  auto* cXi = app.add_subcommand("xi", "Sphere vector xi_n: pairing and commutator norm");
  cXi->add_option("--n", xi.n)->check(CLI::PositiveNumber);
  cXi->add_option("--tolerance", xi.tolerance)->check(CLI::PositiveNumber);
  cXi->callback([&] { action = [&] { return runXi(xi); }; });

  CommutatorArgs comm;
  auto* cComm = app.add_subcommand("commutator", "||[lambda_s, P]|| for a finite-rank projection");
  cComm->add_option("--radius", comm.radius)->required()->check(CLI::Range(1, 12));
  auto* optXi = cComm->add_option("--xi-n", comm.xiN)->check(CLI::PositiveNumber);
  auto* optFile = cComm->add_option("--projection-file", comm.projectionFile)->check(CLI::ExistingFile);
  optXi->excludes(optFile);
  cComm->add_option("--generator", comm.generator)->check(CLI::IsMember({"a", "b", "A", "B"}));
  cComm->add_option("--tol", comm.tol)->check(CLI::PositiveNumber);
  cComm->callback([&] {
    if (!comm.xiN && comm.projectionFile.empty()) {
      throw CLI::RequiredError("one of --xi-n or --projection-file");
    }
    action = [&] { return runCommutator(comm); };
  });

  std::size_t paradoxRadius = kCertificateCheckRadius;
  auto* cParadox = app.add_subcommand("paradox", "Paradoxical decomposition certificates");
  cParadox->require_subcommand(1);
  auto* cVerify = cParadox->add_subcommand("verify", "Check the standard certificate on a ball");
  cVerify->add_option("--radius", paradoxRadius)->check(CLI::Range(0, 12));
  cVerify->callback([&] { action = [&] { return runParadoxVerify(paradoxRadius); }; });

  std::size_t lowerRadius = kCertificateCheckRadius;
  auto* cLower = app.add_subcommand("cf-lower", "Lower bound 1/(n+m-2) from the standard certificate");
  cLower->add_option("--radius", lowerRadius, "Radius on which the certificate is verified")
      ->check(CLI::Range(1, 12));
  cLower->callback([&] { action = [&] { return runCfLower(lowerRadius); }; });

  CfUpperArgs upper;
  auto* cUpper = app.add_subcommand("cf-upper", "Radial profile search for small commutators");
  cUpper->add_option("--dim", upper.dim)->check(CLI::Range(1, 10000));
  cUpper->add_option("--max-sweeps", upper.maxSweeps)->check(CLI::PositiveNumber);
  cUpper->callback([&] { action = [&] { return runCfUpper(upper); }; });

  TraceArgs trace;
  auto* cTrace = app.add_subcommand("trace-lemma", "Random trials of |Tr(QX)| <= rank(X)||X||/2");
  cTrace->add_option("--trials", trace.trials);
  cTrace->add_option("--seed", trace.seed);
  cTrace->add_option("--max-dim", trace.maxDim)->check(CLI::Range(1, 200));
  cTrace->callback([&] { action = [&] { return runTraceLemma(trace); }; });

  AuditArgs audit;
  auto* cAudit = app.add_subcommand("qr-audit", "Audit the lower-bound inequalities on random projections");
  cAudit->add_option("--radius", audit.radius)->check(CLI::Range(2, 10));
  cAudit->add_option("--trials", audit.trials);
  cAudit->add_option("--seed", audit.seed);
  cAudit->add_option("--max-rank", audit.maxRank)->check(CLI::PositiveNumber);
  cAudit->add_option("--support", audit.support);
  cAudit->add_flag("--records", audit.records, "Include every trial in the report");
  cAudit->callback([&] { action = [&] { return runQrAudit(audit); }; });

  InduceArgs induce;
  auto* cInduce = app.add_subcommand("induce", "Induce a character of a central cyclic subgroup");
  cInduce->add_option("--group", induce.group, "cyclic:N | heisenberg-mod:p | table:FILE")->required();
  cInduce->add_option("--subgroup", induce.subgroup, "'center' or comma-separated generators");
  cInduce->add_option("--char", induce.character, "k: the generator maps to exp(2 pi i k/|H|)");
  cInduce->callback([&] { action = [&] { return runInduce(induce); }; });

  MfArgs mf;
  auto* cMf = app.add_subcommand("mf", "Finite-quotient MF witness pipeline");
  cMf->require_subcommand(1);
  auto* cRun = cMf->add_subcommand("run", "Run the staged pipeline and check the probes");
  cRun->add_option("--instance", mf.instance)->check(CLI::IsMember({"abels", "heisenberg"}));
  cRun->add_option("--p", mf.prime)->check(CLI::IsMember({2, 3, 5, 7, 11, 13}));
  cRun->add_option("--moduli", mf.moduli, "Comma list or lo..hi");
  cRun->add_option("--stages", mf.stages)->check(CLI::PositiveNumber);
  cRun->add_option("--characters", mf.characters, "Comma list a_1,a_2,... (default 1,2,3,...)");
  cRun->add_option("--probes", mf.probesFile)->check(CLI::ExistingFile);
  cRun->add_option("--cap", mf.cap)->check(CLI::PositiveNumber);
  cRun->add_option("--format", mf.format)->check(CLI::IsMember({"json", "csv"}));
  cRun->callback([&] { action = [&] { return runMf(mf); }; });

  LefArgs lef;
  auto* cLef = app.add_subcommand("lef", "LEF witnesses for balls of the free group through SL2(Z/m)");
  cLef->add_option("--instance", lef.instance)->check(CLI::IsMember({"free2"}));
  cLef->add_option("--radius", lef.radius)->check(CLI::Range(0, 6));
  cLef->add_option("--moduli-schedule", lef.schedule, "Comma list or lo..hi");
  auto* optWitness = cLef->add_option("--witness", lef.witnessFile, "Write the witness to this file");
  cLef->add_option("--check", lef.checkFile, "Verify an existing witness file instead of searching")
      ->check(CLI::ExistingFile)
      ->excludes(optWitness);
  cLef->callback([&] { action = [&] { return runLef(lef); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Emitted result;
  try {
    result = action();
  } catch (const UsageError& e) {
    std::cerr << "qdtool: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "qdtool: " << e.what() << "\n";
    const bool badRequest = dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
                            dynamic_cast<const ResourceCapError*>(&e) || dynamic_cast<const ExactnessError*>(&e);
    return badRequest ? kExitUsage : kExitCheckFailed;
  }

  if (outputPath.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(outputPath, std::ios::binary);
    if (!out) {
      std::cerr << "qdtool: cannot write " << outputPath << "\n";
      return kExitUsage;
    }
    out << result.text;
  }
  return result.status;
}
