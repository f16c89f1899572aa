#include "qdkit/mflef.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "qdkit/element_io.hpp"
#include "qdkit/errors.hpp"

namespace qdkit {

// ---------------------------------------------------------------------------
// Quotients

AbelsModQuotient::AbelsModQuotient(std::uint64_t modulus, std::uint32_t prime)
    : m_(modulus), p_(prime) {
  static_cast<void>(CongruenceQuotient(modulus, prime));  // validates m >= 2 and gcd(m, p) = 1
  logTable_.assign(m_, -1);
  std::uint64_t x = 1 % m_;
  do {
    logTable_[x] = static_cast<std::int64_t>(powers_.size());
    powers_.push_back(x);
    x = (x * (p_ % m_)) % m_;
  } while (x != 1 % m_ && powers_.size() < m_);
  unsigned __int128 c = static_cast<unsigned __int128>(powers_.size()) * powers_.size();
  for (int i = 0; i < 5; ++i) {
    c *= m_;
    if (c > static_cast<unsigned __int128>(std::numeric_limits<std::size_t>::max() / m_)) {
      throw ResourceCapError("quotient index overflows");
    }
  }
  count_ = static_cast<std::size_t>(c);
}

ModMatrix4 AbelsModQuotient::cosetRep(std::size_t j) const {
  ModMatrix4 r = modIdentity();
  const std::size_t ord = powers_.size();
  r(3, 4) = j % m_;
  j /= m_;
  r(2, 4) = j % m_;
  j /= m_;
  r(2, 3) = j % m_;
  j /= m_;
  r(1, 3) = j % m_;
  j /= m_;
  r(1, 2) = j % m_;
  j /= m_;
  r(3, 3) = powers_[j % ord];
  r(2, 2) = powers_[j / ord];
  return r;
}

std::pair<std::size_t, std::uint64_t> AbelsModQuotient::decompose(const ModMatrix4& y) const {
  const std::int64_t k = logTable_[y(2, 2)], n = logTable_[y(3, 3)];
  if (k < 0 || n < 0) throw PreconditionError("diagonal entry is not a power of p mod m");
  std::size_t j = static_cast<std::size_t>(k) * powers_.size() + static_cast<std::size_t>(n);
  for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}) j = j * m_ + y(a, b);
  return {j, y(1, 4)};
}

bool AbelsModQuotient::inCentralImage(const ModMatrix4& y) const {
  ModMatrix4 z = y;
  z(1, 4) = 0;
  return z == modIdentity();
}

HeisenbergModQuotient::HeisenbergModQuotient(std::uint64_t modulus) : m_(modulus) {
  if (m_ < 2) throw PreconditionError("congruence modulus must be >= 2");
}

HeisenbergModElement HeisenbergModQuotient::multiply(const HeisenbergModElement& x,
                                                     const HeisenbergModElement& y) const {
  const auto ab = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x.a) * y.b) % m_);
  return {(x.a + y.a) % m_, (x.b + y.b) % m_, (x.c + y.c + ab) % m_};
}

// ---------------------------------------------------------------------------
// Instances

std::vector<AbelsElement> AbelsInstance::exhaustion(std::size_t n) const {
  std::vector<AbelsElement> out;
  std::set<std::string> seen;
  const auto nn = static_cast<long>(n);
  for (std::uint32_t k = 0; k <= n; ++k) {
    for (long u = -nn; u <= nn; ++u) {
      PAdicLaurent z(mpz_class(u), k, prime);
      if (seen.insert(z.str()).second) out.push_back(AbelsElement::elementary(1, 4, z));
    }
  }
  return out;
}

bool AbelsInstance::inExhaustion(const AbelsElement& x, std::size_t n) const {
  if (!x.inCenter()) return false;
  const PAdicLaurent z = x.entry(1, 4);
  return z.expo() <= n && abs(z.mantissa()) <= n;
}

Rotation AbelsInstance::omega(std::int64_t a, const AbelsElement& x) const {
  if (!x.inCenter()) throw PreconditionError("characters are defined on the center only");
  const PAdicLaurent z = x.entry(1, 4);
  if (!z.mantissa().fits_slong_p()) throw ResourceCapError("corner mantissa too large");
  unsigned __int128 den = 1;
  for (std::uint32_t i = 0; i < z.expo(); ++i) {
    den *= prime;
    if (den > static_cast<unsigned __int128>(INT64_MAX)) throw ResourceCapError("corner exponent too large");
  }
  const auto d = static_cast<__int128>(den);
  __int128 num = (static_cast<__int128>(a) * z.mantissa().get_si()) % d;
  if (num < 0) num += d;
  return Rotation(static_cast<std::int64_t>(num), static_cast<std::int64_t>(d));
}

std::uint64_t AbelsInstance::centralResidue(const AbelsElement& z, std::uint64_t m) const {
  return z.entry(1, 4).reduce(m);
}

std::vector<AbelsElement> AbelsInstance::generators() const {
  std::vector<AbelsElement> g;
  const auto one = PAdicLaurent::integer(1, prime);
  for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}) {
    g.push_back(AbelsElement::elementary(i, j, one));
  }
  g.push_back(AbelsElement::diagonal(1, 0, prime));
  g.push_back(AbelsElement::diagonal(0, 1, prime));
  return g;
}

std::vector<std::uint64_t> AbelsInstance::defaultModuli(std::size_t count) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 3; out.size() < count; ++m) {
    if (std::gcd<std::uint64_t>(m, prime) == 1) out.push_back(m);
  }
  return out;
}

std::vector<HeisenbergElement> HeisenbergInstance::exhaustion(std::size_t n) const {
  std::vector<HeisenbergElement> out;
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t c = -nn; c <= nn; ++c) out.push_back({0, 0, c});
  return out;
}

bool HeisenbergInstance::inExhaustion(const HeisenbergElement& x, std::size_t n) const {
  return x.inCenter() && static_cast<std::uint64_t>(std::llabs(x.c)) <= n;
}

std::uint64_t HeisenbergInstance::centralResidue(const HeisenbergElement& z, std::uint64_t m) const {
  return heisenbergReduce(z, m).c;
}

std::vector<HeisenbergElement> HeisenbergInstance::generators() const {
  return {{1, 0, 0}, {0, 1, 0}};
}

std::vector<std::uint64_t> HeisenbergInstance::defaultModuli(std::size_t count) const {
  std::vector<std::uint64_t> out;
  std::uint64_t m = 3;
  for (std::size_t i = 0; i < count; ++i, m *= 3) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------

GammaChoice chooseGamma(const std::vector<std::vector<Rotation>>& omegaValues,
                        std::span<const std::uint64_t> residues, std::uint64_t modulus,
                        double tolerance) {
  if (modulus == 0) throw PreconditionError("modulus must be positive");
  GammaChoice out;
  out.tolerance = tolerance;
  out.exact = true;
  for (const auto& omega : omegaValues) {
    if (omega.size() != residues.size()) {
      throw PreconditionError("character values and residues differ in length");
    }
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t arg = 0;
    for (std::uint64_t b = 0; b < modulus && best > 0.0; ++b) {
      double d = 0.0;
      for (std::size_t x = 0; x < omega.size() && d < best; ++x) {
        d = std::max(d, chordLength(omega[x] - cyclicCharacter(b, residues[x], modulus)));
      }
      if (d < best) {
        best = d;
        arg = b;
      }
    }
    out.params.push_back(arg);
    out.discrepancies.push_back(best);
    out.discrepancy = std::max(out.discrepancy, best);
    out.exact = out.exact && best == 0.0;
  }
  out.ok = out.discrepancy < tolerance;
  return out;
}

std::string toString(StageStatus s) {
  switch (s) {
    case StageStatus::completed: return "completed";
    case StageStatus::skippedCap: return "skipped-cap";
    case StageStatus::gammaFailed: return "gamma-failed";
  }
  return "unknown";
}

std::string toString(ProbeClass c) {
  switch (c) {
    case ProbeClass::inN: return "N";
    case ProbeClass::inZNotN: return "Z\\N";
    case ProbeClass::offCenter: return "off-center";
  }
  return "unknown";
}

std::size_t MFWitnessSequence::completedStages() const {
  return static_cast<std::size_t>(std::count_if(stages.begin(), stages.end(), [](const auto& s) {
    return s.status == StageStatus::completed;
  }));
}

namespace {

template <class Instance>
MFWitnessSequence runMFImpl(const Instance& inst, const MFConfig& config,
                            std::span<const Probe<typename Instance::Element>> probes) {
  using Element = typename Instance::Element;
  MFWitnessSequence w;
  w.instance = inst.name();
  w.config = config;
  const std::size_t stages = config.moduli.size();
  if (stages == 0) throw PreconditionError("at least one modulus is required");
  if (w.config.characterParams.empty()) {
    for (std::size_t i = 1; i <= stages; ++i) w.config.characterParams.push_back(static_cast<std::int64_t>(i));
  }
  if (w.config.characterParams.size() < stages) {
    throw PreconditionError("the character schedule is shorter than the number of stages");
  }
  const auto& params = w.config.characterParams;
  w.instanceReport = checkInstance(inst, config.moduli, probes);

  for (const auto& pr : probes) {
    ProbeTrajectory t;
    t.label = pr.label;
    t.element = formatElement(pr.element);
    t.cls = inst.inN(pr.element)   ? ProbeClass::inN
            : inst.inZ(pr.element) ? ProbeClass::inZNotN
                                   : ProbeClass::offCenter;
    w.probes.push_back(std::move(t));
  }

  for (std::size_t n = 1; n <= stages; ++n) {
    StageRecord rec;
    rec.index = n;
    rec.modulus = config.moduli[n - 1];
    const auto q = inst.quotient(rec.modulus);
    rec.blockDim = q.cosetCount();
    const std::vector<Element> fn = inst.exhaustion(n);
    rec.exhaustionSize = fn.size();
    rec.gamma.tolerance = 1.0 / static_cast<double>(n);

    std::optional<SigmaRep<Instance>> sigma;
    if (rec.blockDim > config.dimensionCap) {
      rec.status = StageStatus::skippedCap;
      rec.note = "induced dimension " + std::to_string(rec.blockDim) + " exceeds cap " +
                 std::to_string(config.dimensionCap);
    } else {
      std::vector<std::vector<Rotation>> omega(n);
      std::vector<std::uint64_t> residues;
      for (const auto& x : fn) residues.push_back(inst.centralResidue(x, rec.modulus));
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& x : fn) omega[i].push_back(inst.omega(params[i], x));
      }
      rec.gamma = chooseGamma(omega, residues, rec.modulus, 1.0 / static_cast<double>(n));
      if (!rec.gamma.ok) {
        rec.status = StageStatus::gammaFailed;
        std::ostringstream os;
        os.precision(6);
        os << "best discrepancy " << rec.gamma.discrepancy << " is not below 1/" << n;
        rec.note = os.str();
      } else {
        rec.status = StageStatus::completed;
        sigma.emplace(inst, rec.modulus, rec.gamma.params, config.dimensionCap);
      }
    }

    for (std::size_t k = 0; k < probes.size(); ++k) {
      const Element& x = probes[k].element;
      ProbeStage ps;
      ps.centralImage = q.inCentralImage(q.reduce(x));
      if (inst.inZ(x)) {
        ps.covered = inst.inExhaustion(x, n);
        double eta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const Rotation r = inst.omega(params[i], x);
          eta = std::max(eta, chordLength(r));
          ps.separatingCharacter = ps.separatingCharacter || !r.isZero();
        }
        ps.etaNorm = eta;
      }
      if (sigma) {
        ps.computed = true;
        ps.norm = sigma->normMinusIdentity(x);
      }
      w.probes[k].stages.push_back(ps);
    }
    w.stages.push_back(std::move(rec));
  }
  return w;
}

}  // namespace

MFWitnessSequence runMF(const AbelsInstance& inst, const MFConfig& config,
                        std::span<const Probe<AbelsElement>> probes) {
  auto w = runMFImpl(inst, config, probes);
  w.prime = inst.prime;
  return w;
}

MFWitnessSequence runMF(const HeisenbergInstance& inst, const MFConfig& config,
                        std::span<const Probe<HeisenbergElement>> probes) {
  return runMFImpl(inst, config, probes);
}

std::vector<Probe<AbelsElement>> defaultAbelsProbes(std::uint32_t prime) {
  const auto one = PAdicLaurent::integer(1, prime);
  return {
      {"x14=1", AbelsElement::elementary(1, 4, one)},
      {"x14=1/p", AbelsElement::elementary(1, 4, PAdicLaurent(mpz_class(1), 1, prime))},
      {"x23=1", AbelsElement::elementary(2, 3, one)},
      {"x12=1", AbelsElement::elementary(1, 2, one)},
      {"x34=1", AbelsElement::elementary(3, 4, one)},
  };
}

std::vector<Probe<HeisenbergElement>> defaultHeisenbergProbes() {
  return {
      {"c=1", {0, 0, 1}},   {"c=-1", {0, 0, -1}},  {"c=2", {0, 0, 2}},
      {"a=1", {1, 0, 0}},   {"b=1", {0, 1, 0}},    {"a=b=1", {1, 1, 0}},
      {"a=3", {3, 0, 0}},   {"(2,5,7)", {2, 5, 7}},
  };
}

SeparationReport separationReport(const MFWitnessSequence& w) {
  if (w.stages.size() < 3) throw PreconditionError("separation report needs at least three stages");
  SeparationReport rep;
  rep.ok = true;
  const double root2 = std::sqrt(2.0);
  for (const auto& t : w.probes) {
    ProbeVerdict v;
    v.label = t.label;
    v.cls = t.cls;
    v.ok = true;
    v.lowerBounds.assign(t.stages.size(), std::numeric_limits<double>::quiet_NaN());
    std::ostringstream msg;
    msg.precision(12);
    for (std::size_t s = 0; s < t.stages.size(); ++s) {
      const ProbeStage& ps = t.stages[s];
      if (!ps.computed) continue;
      const std::size_t n = w.stages[s].index;
      const double inv = 1.0 / static_cast<double>(n);
      switch (t.cls) {
        case ProbeClass::inN:
          if (!ps.covered) break;
          v.checkedStages.push_back(n);
          if (ps.norm > inv + kSeparationSlack) {
            v.ok = false;
            msg << "stage " << n << ": norm " << ps.norm << " exceeds 1/" << n << "; ";
          }
          break;
        case ProbeClass::inZNotN: {
          if (!ps.covered || !ps.separatingCharacter) break;
          v.checkedStages.push_back(n);
          const double bound = ps.etaNorm - inv;
          v.lowerBounds[s] = bound;
          if (!(bound > 0.0) || ps.norm < bound - kSeparationSlack) {
            v.ok = false;
            msg << "stage " << n << ": norm " << ps.norm << " below recorded bound " << bound
                << "; ";
          }
          break;
        }
        case ProbeClass::offCenter:
          if (ps.centralImage) break;
          v.checkedStages.push_back(n);
          if (ps.norm < root2 - kSeparationSlack) {
            v.ok = false;
            msg << "stage " << n << ": norm " << ps.norm << " below sqrt(2); ";
          }
          break;
      }
    }
    if (v.checkedStages.empty()) {
      v.ok = false;
      switch (t.cls) {
        case ProbeClass::inN: msg << "not covered by F_n at any completed stage"; break;
        case ProbeClass::inZNotN:
          msg << "no completed stage covers the probe with a separating character";
          break;
        case ProbeClass::offCenter: msg << "image is central at every completed stage"; break;
      }
    }
    v.message = msg.str();
    rep.ok = rep.ok && v.ok;
    rep.probes.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// LEF

Mat2Mod mat2Multiply(const Mat2Mod& x, const Mat2Mod& y, std::uint64_t m) {
  auto mm = [m](std::uint64_t p, std::uint64_t q, std::uint64_t r, std::uint64_t s) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(p) * q + static_cast<unsigned __int128>(r) * s) % m);
  };
  return {mm(x.a11, y.a11, x.a12, y.a21), mm(x.a11, y.a12, x.a12, y.a22),
          mm(x.a21, y.a11, x.a22, y.a21), mm(x.a21, y.a12, x.a22, y.a22)};
}

Mat2Mod sl2Image(const FreeWord& w, std::uint64_t m) {
  if (m < 2) throw PreconditionError("modulus must be >= 2");
  const std::uint64_t two = 2 % m, minusTwo = (m - two) % m;
  Mat2Mod r;
  for (std::size_t i = 0; i < w.length(); ++i) {
    Mat2Mod g;
    switch (w.at(i)) {
      case Letter::a: g.a12 = two; break;
      case Letter::aInv: g.a12 = minusTwo; break;
      case Letter::b: g.a21 = two; break;
      case Letter::bInv: g.a21 = minusTwo; break;
    }
    r = mat2Multiply(r, g, m);
  }
  return r;
}

std::vector<std::uint64_t> defaultLefSchedule() {
  std::vector<std::uint64_t> s;
  for (std::uint64_t m = 3; m <= 64; ++m) s.push_back(m);
  return s;
}

namespace {

std::vector<FreeWord> dedupe(std::span<const FreeWord> f) {
  std::vector<FreeWord> out;
  std::unordered_set<FreeWord> seen;
  for (const auto& w : f) {
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

std::vector<FreeWord> lefDomain(const std::vector<FreeWord>& f) {
  std::unordered_set<FreeWord> seen(f.begin(), f.end());
  std::vector<FreeWord> d = f;
  for (const auto& s : f) {
    for (const auto& t : f) {
      FreeWord st = s * t;
      if (seen.insert(st).second) d.push_back(std::move(st));
    }
  }
  return d;
}

std::pair<FiniteGroup, std::vector<Mat2Mod>> imageGroup(const std::vector<Mat2Mod>& gens,
                                                        std::uint64_t m) {
  return enumerateGroup<Mat2Mod>(
      Mat2Mod{}, std::span<const Mat2Mod>(gens),
      [m](const Mat2Mod& x, const Mat2Mod& y) { return mat2Multiply(x, y, m); }, kLefGroupCap);
}

std::unordered_map<Mat2Mod, ElementId> indexOf(const std::vector<Mat2Mod>& elems) {
  std::unordered_map<Mat2Mod, ElementId> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx.emplace(elems[i], static_cast<ElementId>(i));
  return idx;
}

}  // namespace

LEFWitness lefWitnessSearch(std::span<const FreeWord> finiteSet,
                            std::span<const std::uint64_t> schedule) {
  const std::vector<FreeWord> f = dedupe(finiteSet);
  const std::vector<FreeWord> domain = lefDomain(f);
  for (std::uint64_t m : schedule) {
    std::unordered_set<Mat2Mod> images;
    bool injective = true;
    for (const auto& s : f) injective = injective && images.insert(sl2Image(s, m)).second;
    if (!injective) continue;
    std::vector<Mat2Mod> gens;
    for (const auto& x : freeGenerators()) gens.push_back(sl2Image(x, m));
    std::optional<std::pair<FiniteGroup, std::vector<Mat2Mod>>> h;
    try {
      h.emplace(imageGroup(gens, m));
    } catch (const ResourceCapError&) {
      continue;
    }
    LEFWitness w;
    w.finiteSet = f;
    w.modulus = m;
    w.group = std::make_shared<const FiniteGroup>(std::move(h->first));
    w.groupElements = std::move(h->second);
    const auto idx = indexOf(w.groupElements);
    for (const auto& d : domain) w.phi.emplace(d, idx.at(sl2Image(d, m)));
    return w;
  }
  throw VerificationError("no modulus in the schedule is injective on the finite set");
}

LefReport verifyLefWitness(const LEFWitness& w) {
  if (!w.group) throw PreconditionError("witness has no group");
  auto phi = [&](const FreeWord& x) {
    const auto it = w.phi.find(x);
    if (it == w.phi.end()) throw PreconditionError("φ is undefined at " + x.str());
    if (it->second >= w.group->order()) throw PreconditionError("φ leaves the group at " + x.str());
    return it->second;
  };
  LefReport r;
  const auto& f = w.finiteSet;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (phi(f[i]) == phi(f[j])) r.injectivityViolations.emplace_back(f[i], f[j]);
    }
  }
  for (const auto& s : f) {
    for (const auto& t : f) {
      const FreeWord st = s * t;
      if (phi(st) != w.group->mul(phi(s), phi(t))) {
        r.multiplicativityViolations.push_back({s, t, st});
      }
    }
  }
  return r;
}

LefUnitaries lefToUnitaries(const LEFWitness& w) {
  const auto report = verifyLefWitness(w);
  if (!report.ok()) throw VerificationError("LEF witness fails verification");
  LefUnitaries out{regularRep(w.group), std::numeric_limits<double>::infinity(), std::nullopt,
                   false};
  const auto& f = w.finiteSet;
  std::vector<MonomialMatrix> mats;
  for (const auto& s : f) mats.push_back(out.rep(w.phi.at(s)));
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const double d = monomialDistance(mats[i], mats[j]);
      if (d < out.minPairwiseDistance) {
        out.minPairwiseDistance = d;
        out.argmin = {f[i], f[j]};
      }
    }
  }
  out.ok = out.minPairwiseDistance >= std::sqrt(2.0) - 1e-12;
  return out;
}

void writeLefWitness(std::ostream& out, const LEFWitness& w) {
  out << "modulus " << w.modulus << "\n";
  out << "finite-set";
  for (const auto& s : w.finiteSet) out << ' ' << s.str();
  out << "\n";
  std::vector<FreeWord> domain;
  for (const auto& [d, _] : w.phi) domain.push_back(d);
  std::sort(domain.begin(), domain.end(), shortlexLess);
  for (const auto& d : domain) {
    const Mat2Mod& g = w.groupElements.at(w.phi.at(d));
    out << d.str() << ' ' << g.a11 << ' ' << g.a12 << ' ' << g.a21 << ' ' << g.a22 << "\n";
  }
}

LEFWitness readLefWitness(std::istream& in) {
  const auto lines = readElementLines(in);
  if (lines.size() < 2) throw ParseError("witness needs a modulus line and a finite-set line");
  LEFWitness w;
  {
    std::istringstream ls(lines[0]);
    std::string key;
    if (!(ls >> key >> w.modulus) || key != "modulus" || w.modulus < 2) {
      throw ParseError("expected 'modulus m' with m >= 2");
    }
  }
  {
    std::istringstream ls(lines[1]);
    std::string key, word;
    if (!(ls >> key) || key != "finite-set") throw ParseError("expected 'finite-set ...'");
    while (ls >> word) w.finiteSet.push_back(parseFreeWord(word));
  }
  std::vector<std::pair<FreeWord, Mat2Mod>> entries;
  std::vector<Mat2Mod> gens;
  std::unordered_set<Mat2Mod> seen;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string word;
    Mat2Mod g;
    std::string extra;
    if (!(ls >> word >> g.a11 >> g.a12 >> g.a21 >> g.a22) || (ls >> extra)) {
      throw ParseError("malformed witness line: " + lines[i]);
    }
    for (auto v : {g.a11, g.a12, g.a21, g.a22}) {
      if (v >= w.modulus) throw ParseError("matrix entry out of range in: " + lines[i]);
    }
    entries.emplace_back(parseFreeWord(word), g);
    if (seen.insert(g).second) gens.push_back(g);
  }
  auto h = imageGroup(gens, w.modulus);
  w.group = std::make_shared<const FiniteGroup>(std::move(h.first));
  w.groupElements = std::move(h.second);
  const auto idx = indexOf(w.groupElements);
  for (const auto& [d, g] : entries) {
    if (!w.phi.emplace(d, idx.at(g)).second) throw ParseError("word listed twice: " + d.str());
  }
  return w;
}

}  // namespace qdkit
