#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdkit/cayley.hpp"
#include "qdkit/free_word.hpp"
#include "qdkit/regrep.hpp"
#include "qdkit/sparse_operator.hpp"

namespace qdkit {

// ---------------------------------------------------------------------------
// Sphere vectors

/// ξ_n = Σ_{i=1..n} α_i Σ_{x∈S_i} δ_x with α_i = (|S_i| n)^(-1/2).
struct SphereVector {
  std::size_t n = 0;
  std::vector<double> alpha;  // alpha[i-1] = α_i
  Vec vector;                 // in the basis of the ball it was built on
};

/// Throws PreconditionError when the ball radius is below n or n = 0.
SphereVector xiVector(std::size_t n, const FreeBall& ball);

/// (√3/2)(1 - 1/n), the value of <λ_a ξ_n, ξ_n>.
double pairingClosedForm(std::size_t n);

/// Sphere-count evaluation of <λ_x ξ, ξ> for a radial vector whose entries on
/// S_i all equal coeff[i-1], i = 1..d, zero elsewhere (in particular at e):
///   Σ_i c_i c_{i-1} |S_{i-1} \ S^a_{i-1}| + c_i c_{i+1} |S^a_{i+1}|,  c_0 = c_{d+1} = 0.
double radialPairingSum(std::span<const double> coeff);

/// <λ_x ξ_n, ξ_n> through the sparse truncated operator. Needs radius >= n+1.
double pairingNumeric(const FreeTruncatedRep& rep, const FreeWord& x, std::size_t n);

/// sqrt(1 - |<U ξ, ξ>|^2), the norm of [U, ξξ^*] for unitary U. When U is a
/// truncated generator, ξ must be supported in B_{R-1}. Throws
/// PreconditionError unless ||ξ|| = 1 to 1e-10.
double rankOneCommutatorNorm(const SparseOperator& u, const Vec& xi);

/// sqrt(1 - (3/4)(1 - 1/n)^2): the rank-one commutator for ξ_n.
double xiCommutatorClosedForm(std::size_t n);

// ---------------------------------------------------------------------------
// Paradoxical decompositions of F_2

struct Piece {
  std::string name;
  std::function<bool(const FreeWord&)> contains;
};

/// Pieces X_1..X_n, Y_1..Y_m with translators g_i, h_j (g_1 = h_1 = e) such
/// that F_2 = ⊔ g_i X_i = ⊔ h_j Y_j = (⊔ X_i) ⊔ (⊔ Y_j).
struct ParadoxicalCertificate {
  std::vector<Piece> xPieces;
  std::vector<FreeWord> xTranslators;
  std::vector<Piece> yPieces;
  std::vector<FreeWord> yTranslators;

  std::size_t pieceCount() const { return xPieces.size() + yPieces.size(); }
  /// {g_1..g_n, h_1..h_m} without repetitions, in first-seen order.
  std::vector<FreeWord> translatorSet() const;
  std::size_t maxTranslatorLength() const;
};

/// X_1 = a-words ∪ {e} ∪ {a^-k}, X_2 = a^-1-words minus {a^-k}, translators
/// (e, a); Y_1 = b-words, Y_2 = b^-1-words, translators (e, b).
ParadoxicalCertificate f2StandardCertificate();

struct CertificateViolation {
  std::string kind;  // "pieces", "x-translates", "y-translates", "shape"
  FreeWord witness;
  std::string detail;
};

struct CertificateReport {
  std::size_t radius = 0;
  std::size_t checked = 0;
  std::vector<CertificateViolation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

/// Checks every w in B_R: exactly one piece contains w; exactly one i has
/// g_i^-1 w in X_i; exactly one j has h_j^-1 w in Y_j.
CertificateReport verifyCertificate(const ParadoxicalCertificate& cert, std::size_t radius);

inline constexpr std::size_t kCertificateCheckRadius = 6;

struct LowerBound {
  long numerator = 1;
  long denominator = 1;
  std::vector<FreeWord> finiteSet;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// 1/(n+m-2) for a certificate that passes verifyCertificate on B_verifyRadius.
/// Throws VerificationError otherwise.
LowerBound cfLowerBound(const ParadoxicalCertificate& cert,
                        std::size_t verifyRadius = kCertificateCheckRadius);

// ---------------------------------------------------------------------------
// Trace lemma

struct TraceLemmaResult {
  double lhs = 0.0;    // |Tr(QX)|
  double bound = 0.0;  // rank(X) ||X|| / 2
  std::size_t rank = 0;
  double norm = 0.0;
  bool ok = false;
};

/// Requires X hermitian with Tr X = 0 and the spectrum of Q ⊆ [0, 1] (tolerance 1e-10,
/// scaled by max(1, ||X||) for X); throws PreconditionError otherwise.
TraceLemmaResult traceLemmaCheck(const Mat& x, const Mat& q);

struct TraceLemmaTrials {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  double maxRatio = 0.0;  // max lhs / bound over trials with bound > 0
  std::size_t maxDim = 0;
};

/// Random (X, Q) pairs with dim ≤ maxDim: X = U diag(λ) U^* of random rank,
/// shifted to trace zero; Q = V diag(u) V^* with u ∈ [0, 1].
TraceLemmaTrials runTraceLemmaTrials(std::size_t trials, std::uint64_t seed,
                                     std::size_t maxDim = 40);

// ---------------------------------------------------------------------------
// Audit of the lower-bound proof chain

struct AuditRecord {
  std::size_t rank = 0;
  double epsilon = 0.0;
  std::vector<std::pair<FreeWord, double>> commutators;  // per element of F
  double traceX = 0.0;  // Tr(P_X P), X = ∪ X_i
  double traceY = 0.0;
  double slackX = 0.0;  // Tr(P_X P) + (n-1) k ε - k
  double slackY = 0.0;
  /// k ε - |Tr(P_{g_i X_i}(P - λ_{g_i} P λ_{g_i}^*))| for i = 1..n, then j = 1..m.
  std::vector<double> translateSlack;
  double bound = 0.0;            // 1/(n+m-2)
  double conclusionSlack = 0.0;  // ε - bound
  bool ok = false;
};

inline constexpr double kAuditSlack = 1e-8;

/// Throws ExactnessError when supp P is too large for the translators, and
/// VerificationError when the certificate fails on the ball.
AuditRecord qrosenbergAudit(const FiniteProjection& p, const ParadoxicalCertificate& cert,
                            const FreeTruncatedRep& rep, const NormOptions& opt = {});

/// Seeded random projection of rank in [1, maxRank] supported in B_supportRadius
/// of `ball`. Cycles through generic, near-radial and small-support shapes.
FiniteProjection randomProjection(const FreeBall& ball, std::size_t supportRadius,
                                  std::size_t maxRank, std::uint64_t seed,
                                  std::size_t trialIndex);

struct AuditBatch {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double minEpsilon = 0.0;  // min over trials of max_{x∈{a,b}} ||[λ_x, P]||
  double minSlack = 0.0;    // min over trials of every audit slack
  std::size_t violations = 0;
  std::vector<AuditRecord> records;
};

AuditBatch runRandomAudit(const FreeTruncatedRep& rep, const ParadoxicalCertificate& cert,
                          std::size_t trials, std::uint64_t seed, std::size_t maxRank,
                          std::size_t supportRadius, const NormOptions& opt = {});

// ---------------------------------------------------------------------------
// Upper-bound search over radial rank-one projections

struct UpperSearchResult {
  double bestValue = 0.0;      // closed-form objective at the final profile
  std::vector<double> profile; // β_1..β_d, unit norm
  std::size_t sweeps = 0;
  bool converged = false;
  /// Max over F of the numerically computed commutator for the profile
  /// vector; empty when no representation was supplied.
  std::optional<double> certifiedValue;
};

/// Coordinate descent on β (exact one-dimensional maximization of the
/// pairing per coordinate) minimizing max_{x∈F} ||[λ_x, P_ξβ]||, where ξβ
/// has value β_i / sqrt|S_i| on S_i. F may contain generators and e.
/// Stops when no coordinate moves by more than 1e-6 in a sweep.
UpperSearchResult cfUpperSearch(std::size_t profileDim, const FreeTruncatedRep& rep,
                                std::span<const FreeWord> finiteSet,
                                std::optional<std::vector<double>> start = std::nullopt,
                                std::size_t maxSweeps = 1'000'000);

/// Same search using only the closed form, for depths too large to
/// materialize a ball. certifiedValue stays empty.
UpperSearchResult cfUpperSearch(std::size_t profileDim, std::span<const FreeWord> finiteSet,
                                std::optional<std::vector<double>> start = std::nullopt,
                                std::size_t maxSweeps = 1'000'000);

/// Radial vector with value profile[i-1]/sqrt|S_i| on S_i, in the ball basis.
Vec radialVector(std::span<const double> profile, const FreeBall& ball);

}  // namespace qdkit
