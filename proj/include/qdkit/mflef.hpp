#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdkit/abels.hpp"
#include "qdkit/finite_group.hpp"
#include "qdkit/finrep.hpp"
#include "qdkit/free_word.hpp"
#include "qdkit/heisenberg.hpp"
#include "qdkit/monomial.hpp"

namespace qdkit {

// ---------------------------------------------------------------------------
// Congruence quotients with their central images

/// Abels' group mod m. The central image Z_m is the (1,4) corner ≅ Z/m;
/// cosets of Z_m are labelled by every other entry.
class AbelsModQuotient {
 public:
  using Element = ModMatrix4;
  using Central = std::uint64_t;

  AbelsModQuotient(std::uint64_t modulus, std::uint32_t prime);

  std::uint64_t modulus() const noexcept { return m_; }
  std::uint32_t prime() const noexcept { return p_; }
  /// Multiplicative order of p mod m.
  std::size_t primeOrder() const noexcept { return powers_.size(); }
  /// [Γ_m : Z_m] = ord_m(p)^2 m^5.
  std::size_t cosetCount() const noexcept { return count_; }
  ModMatrix4 cosetRep(std::size_t j) const;
  ModMatrix4 multiply(const ModMatrix4& x, const ModMatrix4& y) const { return modMultiply(x, y, m_); }
  std::pair<std::size_t, std::uint64_t> decompose(const ModMatrix4& y) const;
  bool inCentralImage(const ModMatrix4& y) const;
  ModMatrix4 reduce(const AbelsElement& g) const { return abelsReduce(g, CongruenceQuotient(m_, p_)); }

 private:
  std::uint64_t m_;
  std::uint32_t p_;
  std::vector<std::uint64_t> powers_;   // p^0 .. p^(ord-1) mod m
  std::vector<std::int64_t> logTable_;  // residue -> exponent, -1 if not a power
  std::size_t count_;
};

/// Heisenberg group mod m; Z_m = {(0,0,c)}, cosets labelled by (a, b).
class HeisenbergModQuotient {
 public:
  using Element = HeisenbergModElement;
  using Central = std::uint64_t;

  explicit HeisenbergModQuotient(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return m_; }
  std::size_t cosetCount() const noexcept { return static_cast<std::size_t>(m_ * m_); }
  HeisenbergModElement cosetRep(std::size_t j) const { return {j / m_, j % m_, 0}; }
  HeisenbergModElement multiply(const HeisenbergModElement& x, const HeisenbergModElement& y) const;
  std::pair<std::size_t, std::uint64_t> decompose(const HeisenbergModElement& y) const {
    return {static_cast<std::size_t>(y.a * m_ + y.b), y.c};
  }
  bool inCentralImage(const HeisenbergModElement& y) const { return y.a == 0 && y.b == 0; }
  HeisenbergModElement reduce(const HeisenbergElement& g) const { return heisenbergReduce(g, m_); }

 private:
  std::uint64_t m_;
};

// ---------------------------------------------------------------------------
// Instances: group, center Z, subgroup N ⊆ Z, characters of Z trivial on N

/// Abels' group over Z[1/p]; Z = corner x14 ∈ Z[1/p], N = integer corner.
/// ω_a(u p^-k) = exp(2πi a u / p^k).
struct AbelsInstance {
  using Element = AbelsElement;
  using Quotient = AbelsModQuotient;

  std::uint32_t prime = 2;

  std::string name() const { return "abels"; }
  Quotient quotient(std::uint64_t m) const { return Quotient(m, prime); }
  bool inZ(const Element& x) const { return x.inCenter(); }
  bool inN(const Element& x) const { return x.inN(); }
  /// F_n: corner values u p^-k with |u| <= n, 0 <= k <= n.
  std::vector<Element> exhaustion(std::size_t n) const;
  bool inExhaustion(const Element& x, std::size_t n) const;
  Rotation omega(std::int64_t a, const Element& z) const;
  /// π_m(z) ∈ Z_m ≅ Z/m for z ∈ Z.
  std::uint64_t centralResidue(const Element& z, std::uint64_t m) const;
  std::vector<Element> generators() const;
  /// Default moduli: 3, 5, 7, ... coprime to p.
  std::vector<std::uint64_t> defaultModuli(std::size_t count) const;
};

/// Integer Heisenberg group; Z = N = {(0,0,c)}, so every ω_a is trivial.
struct HeisenbergInstance {
  using Element = HeisenbergElement;
  using Quotient = HeisenbergModQuotient;

  std::string name() const { return "heisenberg"; }
  Quotient quotient(std::uint64_t m) const { return Quotient(m); }
  bool inZ(const Element& x) const { return x.inCenter(); }
  bool inN(const Element& x) const { return x.inN(); }
  /// F_n: (0,0,c) with |c| <= n.
  std::vector<Element> exhaustion(std::size_t n) const;
  bool inExhaustion(const Element& x, std::size_t n) const;
  Rotation omega(std::int64_t, const Element&) const { return Rotation(); }
  std::uint64_t centralResidue(const Element& z, std::uint64_t m) const;
  std::vector<Element> generators() const;
  /// Default moduli: 3, 9, 27, ...
  std::vector<std::uint64_t> defaultModuli(std::size_t count) const;
};

template <class E>
struct Probe {
  std::string label;
  E element;
};

struct InstanceReport {
  /// m_i divides m_{i+1} for every i, so the kernels decrease.
  bool nested = false;
  /// Probes claimed to lie in Z that fail to commute with a generator or probe.
  std::vector<std::string> commutationFailures;
  /// Probes in N that are not in Z.
  std::vector<std::string> containmentFailures;
  bool ok() const { return commutationFailures.empty() && containmentFailures.empty(); }
};

template <class Instance>
InstanceReport checkInstance(const Instance& inst, std::span<const std::uint64_t> moduli,
                             std::span<const Probe<typename Instance::Element>> probes) {
  InstanceReport r;
  r.nested = true;
  for (std::size_t i = 0; i + 1 < moduli.size(); ++i) r.nested = r.nested && moduli[i + 1] % moduli[i] == 0;
  const auto gens = inst.generators();
  for (const auto& pr : probes) {
    if (inst.inN(pr.element) && !inst.inZ(pr.element)) r.containmentFailures.push_back(pr.label);
    if (!inst.inZ(pr.element)) continue;
    bool ok = true;
    for (const auto& g : gens) ok = ok && g * pr.element == pr.element * g;
    for (const auto& q : probes) ok = ok && q.element * pr.element == pr.element * q.element;
    if (!ok) r.commutationFailures.push_back(pr.label);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Characters of Z_m ≅ Z/m and the choice of γ_n

/// γ_b(h) = exp(2πi b h / m) on Z/m.
inline Rotation cyclicCharacter(std::uint64_t b, std::uint64_t h, std::uint64_t m) {
  return Rotation(static_cast<std::int64_t>((static_cast<unsigned __int128>(b) * h) % m),
                  static_cast<std::int64_t>(m));
}

struct GammaChoice {
  /// One parameter b_i per character ω_i of η_n.
  std::vector<std::uint64_t> params;
  /// max_{x∈F_n} |ω_i(x) - γ_{b_i}(π_n x)| per i.
  std::vector<double> discrepancies;
  double discrepancy = 0.0;  // max over i: the norm of η_n - γ_n∘π_n on F_n
  double tolerance = 0.0;
  /// Every chosen γ_{b_i}∘π_n equals ω_i on F_n as exact rotations.
  bool exact = false;
  bool ok = false;  // discrepancy < tolerance
};

/// Exhaustive search over the m characters of Z/m for each ω_i.
/// omegaValues[i][x] = ω_i(x) and residues[x] = π_n(x) for x ∈ F_n.
GammaChoice chooseGamma(const std::vector<std::vector<Rotation>>& omegaValues,
                        std::span<const std::uint64_t> residues, std::uint64_t modulus,
                        double tolerance);

// ---------------------------------------------------------------------------
// σ_n = (⊕_i Ind γ_{n,i}) ∘ π_n

inline constexpr std::size_t kDefaultDimensionCap = 100'000;

template <class Instance>
class SigmaRep {
 public:
  using Element = typename Instance::Element;

  /// Throws ResourceCapError when [Γ_n : Z_n] exceeds `cap`.
  SigmaRep(const Instance& inst, std::uint64_t modulus, std::vector<std::uint64_t> gammaParams,
           std::size_t cap = kDefaultDimensionCap)
      : inst_(inst), q_(inst.quotient(modulus)), params_(std::move(gammaParams)) {
    if (params_.empty()) throw PreconditionError("σ needs at least one character");
    if (q_.cosetCount() > cap) {
      throw ResourceCapError("induced dimension " + std::to_string(q_.cosetCount()) +
                             " exceeds the cap " + std::to_string(cap));
    }
  }

  std::size_t blockDim() const noexcept { return q_.cosetCount(); }
  std::size_t dim() const noexcept { return blockDim() * params_.size(); }
  const typename Instance::Quotient& quotient() const noexcept { return q_; }
  const std::vector<std::uint64_t>& gammaParams() const noexcept { return params_; }

  MonomialMatrix block(std::size_t i, const Element& x) const {
    const auto y = q_.reduce(x);
    const std::uint64_t m = q_.modulus(), b = params_.at(i);
    return inducedMatrix(q_, y, [&](std::uint64_t h) { return Phase(cyclicCharacter(b, h, m)); });
  }

  MonomialMatrix operator()(const Element& x) const {
    std::vector<MonomialMatrix> blocks;
    for (std::size_t i = 0; i < params_.size(); ++i) blocks.push_back(block(i, x));
    return directSum(blocks);
  }

  /// ||σ_n(x) - 1|| as the maximum over distinct blocks.
  double normMinusIdentity(const Element& x) const {
    std::vector<std::uint64_t> distinct = params_;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    double best = 0.0;
    for (std::uint64_t b : distinct) {
      const auto i = static_cast<std::size_t>(
          std::find(params_.begin(), params_.end(), b) - params_.begin());
      best = std::max(best, monomialNormMinusIdentity(block(i, x)));
    }
    return best;
  }

  bool centralImage(const Element& x) const { return q_.inCentralImage(q_.reduce(x)); }

 private:
  Instance inst_;
  typename Instance::Quotient q_;
  std::vector<std::uint64_t> params_;
};

// ---------------------------------------------------------------------------
// The staged pipeline

enum class StageStatus { completed, skippedCap, gammaFailed };
std::string toString(StageStatus s);

enum class ProbeClass { inN, inZNotN, offCenter };
std::string toString(ProbeClass c);

struct StageRecord {
  std::size_t index = 0;  // n, starting at 1
  std::uint64_t modulus = 0;
  StageStatus status = StageStatus::completed;
  std::size_t blockDim = 0;  // [Γ_n : Z_n]
  std::size_t exhaustionSize = 0;
  GammaChoice gamma;
  std::string note;
};

struct ProbeStage {
  bool computed = false;  // stage completed
  double norm = std::numeric_limits<double>::quiet_NaN();
  /// ||η_n(x) - 1|| for central probes.
  double etaNorm = std::numeric_limits<double>::quiet_NaN();
  bool covered = false;       // central probe lies in F_n
  bool centralImage = false;  // π_n(x) ∈ Z_n
  /// Some ω_i, i <= n, is non-trivial at x.
  bool separatingCharacter = false;
};

struct ProbeTrajectory {
  std::string label;
  std::string element;
  ProbeClass cls = ProbeClass::offCenter;
  std::vector<ProbeStage> stages;
};

struct MFConfig {
  std::vector<std::uint64_t> moduli;          // one per stage
  std::vector<std::int64_t> characterParams;  // a_1, a_2, ...; empty means 1, 2, 3, ...
  std::size_t dimensionCap = kDefaultDimensionCap;
};

struct MFWitnessSequence {
  std::string instance;
  std::uint32_t prime = 0;
  MFConfig config;
  InstanceReport instanceReport;
  std::vector<StageRecord> stages;
  std::vector<ProbeTrajectory> probes;
  std::size_t completedStages() const;
};

MFWitnessSequence runMF(const AbelsInstance& inst, const MFConfig& config,
                        std::span<const Probe<AbelsElement>> probes);
MFWitnessSequence runMF(const HeisenbergInstance& inst, const MFConfig& config,
                        std::span<const Probe<HeisenbergElement>> probes);

std::vector<Probe<AbelsElement>> defaultAbelsProbes(std::uint32_t prime);
std::vector<Probe<HeisenbergElement>> defaultHeisenbergProbes();

inline constexpr double kSeparationSlack = 1e-9;

struct ProbeVerdict {
  std::string label;
  ProbeClass cls = ProbeClass::offCenter;
  bool ok = false;
  /// Stages at which an assertion applied.
  std::vector<std::size_t> checkedStages;
  /// Recorded lower bounds ||η_n(x) - 1|| - 1/n for Z \ N probes, by stage
  /// (NaN where no bound applies).
  std::vector<double> lowerBounds;
  std::string message;
};

struct SeparationReport {
  std::vector<ProbeVerdict> probes;
  bool ok = false;
};

/// Checks the three probe classes against every completed stage:
///   N:      ||σ_n(x) - 1|| <= 1/n + 1e-9 whenever x ∈ F_n;
///   Z \ N:  ||σ_n(x) - 1|| >= ||η_n(x) - 1|| - 1/n > 0 once a separating ω_i is in η_n;
///   not Z:  ||σ_n(x) - 1|| >= √2 - 1e-9 whenever π_n(x) ∉ Z_n, for at least one stage.
/// Throws PreconditionError with fewer than three stages.
SeparationReport separationReport(const MFWitnessSequence& w);

// ---------------------------------------------------------------------------
// LEF witnesses through SL_2(Z/m)

struct Mat2Mod {
  std::uint64_t a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  friend bool operator==(const Mat2Mod&, const Mat2Mod&) = default;
};

Mat2Mod mat2Multiply(const Mat2Mod& x, const Mat2Mod& y, std::uint64_t m);
/// Image of a word under a ↦ [[1,2],[0,1]], b ↦ [[1,0],[2,1]] mod m.
Mat2Mod sl2Image(const FreeWord& w, std::uint64_t m);

}  // namespace qdkit

template <>
struct std::hash<qdkit::Mat2Mod> {
  std::size_t operator()(const qdkit::Mat2Mod& x) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : {x.a11, x.a12, x.a21, x.a22}) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

namespace qdkit {

struct LEFWitness {
  std::vector<FreeWord> finiteSet;
  std::uint64_t modulus = 0;
  std::shared_ptr<const FiniteGroup> group;  // H
  std::vector<Mat2Mod> groupElements;        // H, in index order
  /// φ on F ∪ F·F.
  std::unordered_map<FreeWord, ElementId> phi;
};

inline constexpr std::size_t kLefGroupCap = 5000;

std::vector<std::uint64_t> defaultLefSchedule();  // 3, 4, ..., 64

/// Smallest modulus in the schedule whose quotient map is injective on F.
/// Moduli whose image group exceeds kLefGroupCap elements are passed over.
/// Throws VerificationError when the schedule is exhausted.
LEFWitness lefWitnessSearch(std::span<const FreeWord> finiteSet,
                            std::span<const std::uint64_t> schedule);

struct LefReport {
  /// Pairs s != t in F with φ(s) = φ(t).
  std::vector<std::pair<FreeWord, FreeWord>> injectivityViolations;
  /// Triples (s, t, st) with φ(st) != φ(s)φ(t).
  std::vector<std::array<FreeWord, 3>> multiplicativityViolations;
  bool ok() const { return injectivityViolations.empty() && multiplicativityViolations.empty(); }
};

/// Throws PreconditionError when φ is undefined on an element of F ∪ F·F.
LefReport verifyLefWitness(const LEFWitness& w);

struct LefUnitaries {
  UnitaryRep rep;  // λ_H
  double minPairwiseDistance = std::numeric_limits<double>::infinity();
  std::optional<std::pair<FreeWord, FreeWord>> argmin;
  bool ok = false;  // distance >= √2 - 1e-12
};

/// π = λ_H ∘ φ. Throws VerificationError for an invalid witness.
LefUnitaries lefToUnitaries(const LEFWitness& w);

/// Text format: "modulus m", then "finite-set w1 w2 ...", then one line
/// "word a11 a12 a21 a22" per element of the domain of φ in shortlex order.
void writeLefWitness(std::ostream& out, const LEFWitness& w);
/// Rebuilds H as the group generated by the listed images.
LEFWitness readLefWitness(std::istream& in);

}  // namespace qdkit
