#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdkit/finite_group.hpp"
#include "qdkit/monomial.hpp"

namespace qdkit {

struct HomomorphismReport {
  std::size_t pairsChecked = 0;
  bool exhaustive = false;
  /// First failing pair (g, h) with ρ(gh) != ρ(g)ρ(h), if any.
  std::optional<std::pair<ElementId, ElementId>> violation;
  bool identityOk = false;
  bool ok() const noexcept { return identityOk && !violation; }
};

/// Monomial unitary representation of a finite group, evaluated lazily.
class UnitaryRep {
 public:
  using Eval = std::function<MonomialMatrix(ElementId)>;

  UnitaryRep(std::shared_ptr<const FiniteGroup> group, std::size_t dim, Eval eval);

  const FiniteGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const FiniteGroup>& groupPtr() const noexcept { return group_; }
  std::size_t dim() const noexcept { return dim_; }
  MonomialMatrix operator()(ElementId g) const { return eval_(g); }

  /// Exhaustive over all pairs for |G| <= 512, otherwise 10^4 seeded pairs.
  HomomorphismReport verifyHomomorphism(std::uint64_t seed = 0) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::size_t dim_;
  Eval eval_;
};

inline constexpr std::size_t kExhaustiveHomomorphismOrder = 512;

/// λ(s) e_t = e_{st}.
UnitaryRep regularRep(std::shared_ptr<const FiniteGroup> group);

/// Character γ of a central subgroup H of F, with exact rotation values.
class CentralCharacter {
 public:
  /// H = elements, γ(elements[i]) = values[i]. Verifies that H is a central
  /// subgroup and that γ is multiplicative; throws VerificationError otherwise.
  CentralCharacter(std::shared_ptr<const FiniteGroup> group, std::vector<ElementId> elements,
                   std::vector<Rotation> values);

  /// H = <h>, γ(h^j) = exp(2πi j k / ord(h)).
  static CentralCharacter cyclic(std::shared_ptr<const FiniteGroup> group, ElementId h,
                                 std::int64_t k);
  static CentralCharacter trivial(std::shared_ptr<const FiniteGroup> group,
                                  std::vector<ElementId> elements);

  const FiniteGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const FiniteGroup>& groupPtr() const noexcept { return group_; }
  const std::vector<ElementId>& elements() const noexcept { return elements_; }
  bool contains(ElementId x) const { return position_[x] != kAbsent; }
  /// Throws PreconditionError for x not in H.
  Rotation operator()(ElementId x) const;
  bool isTrivial() const;

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<ElementId> elements_;
  std::vector<Rotation> values_;
  std::vector<std::uint32_t> position_;
};

/// Left transversal of F/H: elements are scanned in index order and kept
/// when their coset xH is new.
std::vector<ElementId> greedyTransversal(const FiniteGroup& f, std::span<const ElementId> h);

/// Ind_H^F γ on the coset basis: g e_j = γ(h) e_{j'} where g x_j = x_{j'} h.
/// Throws PreconditionError if `cosetReps` is not a left transversal, and
/// VerificationError if the homomorphism check fails (exhaustive for
/// |F| <= 512).
UnitaryRep induceCentral(const CentralCharacter& cc,
                         std::optional<std::vector<ElementId>> cosetReps = std::nullopt);

struct SeparationResult {
  double minNorm = std::numeric_limits<double>::infinity();
  std::optional<ElementId> argmin;
  bool ok = false;
};

/// min over g ∉ H of ||ρ(g) - 1||; ok when it is at least √2 - 1e-12.
SeparationResult checkInducedSeparation(const UnitaryRep& rep, std::span<const ElementId> h);

/// ρ(h) = γ(h)·1 exactly for every h in H.
bool checkInducedRestriction(const UnitaryRep& rep, const CentralCharacter& cc);

/// Block-diagonal sum; throws PreconditionError for different source groups.
UnitaryRep directSum(const std::vector<UnitaryRep>& reps);

/// Group data for induction from a central subgroup without a multiplication
/// table. `decompose(y)` returns (j, z) with y = rep(j)·z, z central.
template <class Q>
concept CentralQuotient = requires(const Q& q, const typename Q::Element& x) {
  typename Q::Element;
  typename Q::Central;
  { q.cosetCount() } -> std::convertible_to<std::size_t>;
  { q.cosetRep(std::size_t{}) } -> std::convertible_to<typename Q::Element>;
  { q.multiply(x, x) } -> std::convertible_to<typename Q::Element>;
  q.decompose(x);
};

/// Ind(g) for a character given as a function on the central part.
template <CentralQuotient Q, class Character>
MonomialMatrix inducedMatrix(const Q& q, const typename Q::Element& g, Character&& gamma) {
  const std::size_t n = q.cosetCount();
  std::vector<std::uint32_t> perm(n);
  std::vector<Phase> phases(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto [target, central] = q.decompose(q.multiply(g, q.cosetRep(j)));
    perm[j] = static_cast<std::uint32_t>(target);
    phases[j] = gamma(central);
  }
  return MonomialMatrix(std::move(perm), std::move(phases));
}

/// CentralQuotient view of a finite group and a central subgroup.
class TableCentralQuotient {
 public:
  using Element = ElementId;
  using Central = ElementId;

  TableCentralQuotient(std::shared_ptr<const FiniteGroup> group, std::span<const ElementId> h,
                       std::vector<ElementId> cosetReps);

  std::size_t cosetCount() const noexcept { return reps_.size(); }
  ElementId cosetRep(std::size_t j) const { return reps_[j]; }
  ElementId multiply(ElementId x, ElementId y) const { return group_->mul(x, y); }
  std::pair<std::size_t, ElementId> decompose(ElementId y) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<ElementId> reps_;
  std::vector<std::uint32_t> cosetOf_;
};

}  // namespace qdkit
