#include "qdkit/finrep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qdkit/errors.hpp"

namespace qdkit {

UnitaryRep::UnitaryRep(std::shared_ptr<const FiniteGroup> group, std::size_t dim, Eval eval)
    : group_(std::move(group)), dim_(dim), eval_(std::move(eval)) {
  if (!group_) throw PreconditionError("representation needs a source group");
}

HomomorphismReport UnitaryRep::verifyHomomorphism(std::uint64_t seed) const {
  HomomorphismReport r;
  const FiniteGroup& g = *group_;
  r.identityOk = eval_(g.identity()).isIdentity();
  const std::size_t n = g.order();
  if (n <= kExhaustiveHomomorphismOrder) {
    r.exhaustive = true;
    std::vector<MonomialMatrix> m;
    m.reserve(n);
    for (std::size_t x = 0; x < n; ++x) m.push_back(eval_(static_cast<ElementId>(x)));
    for (std::size_t x = 0; x < n && !r.violation; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        ++r.pairsChecked;
        const auto xy = g.mul(static_cast<ElementId>(x), static_cast<ElementId>(y));
        if (!(m[xy] == m[x] * m[y])) {
          r.violation = {static_cast<ElementId>(x), static_cast<ElementId>(y)};
          break;
        }
      }
    }
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
  for (int i = 0; i < 10'000; ++i) {
    const ElementId x = pick(rng), y = pick(rng);
    ++r.pairsChecked;
    if (!(eval_(g.mul(x, y)) == eval_(x) * eval_(y))) {
      r.violation = {x, y};
      break;
    }
  }
  return r;
}

UnitaryRep regularRep(std::shared_ptr<const FiniteGroup> group) {
  const std::size_t n = group->order();
  const FiniteGroup* g = group.get();
  return UnitaryRep(std::move(group), n, [g, n](ElementId s) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t t = 0; t < n; ++t) perm[t] = g->mul(s, static_cast<ElementId>(t));
    return MonomialMatrix(std::move(perm), std::vector<Phase>(n));
  });
}

// ---------------------------------------------------------------------------

CentralCharacter::CentralCharacter(std::shared_ptr<const FiniteGroup> group,
                                   std::vector<ElementId> elements, std::vector<Rotation> values)
    : group_(std::move(group)), elements_(std::move(elements)), values_(std::move(values)) {
  if (!group_) throw PreconditionError("character needs a group");
  if (elements_.size() != values_.size()) {
    throw PreconditionError("subgroup and character value lists differ in length");
  }
  const FiniteGroup& f = *group_;
  position_.assign(f.order(), kAbsent);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const ElementId x = elements_[i];
    if (x >= f.order()) throw PreconditionError("subgroup element out of range");
    if (position_[x] != kAbsent) throw PreconditionError("subgroup element listed twice");
    position_[x] = static_cast<std::uint32_t>(i);
  }
  if (!contains(f.identity())) throw VerificationError("H does not contain the identity");
  for (ElementId x : elements_) {
    if (!f.isCentral(x)) {
      throw VerificationError("element " + std::to_string(x) + " of H is not central");
    }
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      const ElementId xy = f.mul(elements_[i], elements_[j]);
      if (!contains(xy)) throw VerificationError("H is not closed under multiplication");
      if (!(values_[position_[xy]] == values_[i] + values_[j])) {
        throw VerificationError("character is not multiplicative at (" +
                                std::to_string(elements_[i]) + ", " +
                                std::to_string(elements_[j]) + ")");
      }
    }
  }
}

CentralCharacter CentralCharacter::cyclic(std::shared_ptr<const FiniteGroup> group, ElementId h,
                                          std::int64_t k) {
  if (h >= group->order()) throw PreconditionError("generator out of range");
  const auto d = static_cast<std::int64_t>(group->elementOrder(h));
  std::vector<ElementId> elems;
  std::vector<Rotation> vals;
  ElementId x = group->identity();
  for (std::int64_t j = 0; j < d; ++j) {
    elems.push_back(x);
    vals.emplace_back(j * k, d);
    x = group->mul(x, h);
  }
  return CentralCharacter(std::move(group), std::move(elems), std::move(vals));
}

CentralCharacter CentralCharacter::trivial(std::shared_ptr<const FiniteGroup> group,
                                           std::vector<ElementId> elements) {
  std::vector<Rotation> vals(elements.size());
  return CentralCharacter(std::move(group), std::move(elements), std::move(vals));
}

Rotation CentralCharacter::operator()(ElementId x) const {
  if (x >= position_.size() || position_[x] == kAbsent) {
    throw PreconditionError("element is outside the central subgroup");
  }
  return values_[position_[x]];
}

bool CentralCharacter::isTrivial() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rotation& r) { return r.isZero(); });
}

// ---------------------------------------------------------------------------

std::vector<ElementId> greedyTransversal(const FiniteGroup& f, std::span<const ElementId> h) {
  std::vector<bool> covered(f.order(), false);
  std::vector<ElementId> reps;
  for (std::size_t x = 0; x < f.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(static_cast<ElementId>(x));
    for (ElementId z : h) covered[f.mul(static_cast<ElementId>(x), z)] = true;
  }
  return reps;
}

TableCentralQuotient::TableCentralQuotient(std::shared_ptr<const FiniteGroup> group,
                                           std::span<const ElementId> h,
                                           std::vector<ElementId> cosetReps)
    : group_(std::move(group)), reps_(std::move(cosetReps)) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  cosetOf_.assign(group_->order(), unset);
  for (std::size_t j = 0; j < reps_.size(); ++j) {
    if (reps_[j] >= group_->order()) throw PreconditionError("coset representative out of range");
    for (ElementId z : h) {
      auto& slot = cosetOf_[group_->mul(reps_[j], z)];
      if (slot != unset) throw PreconditionError("coset representatives share a coset");
      slot = static_cast<std::uint32_t>(j);
    }
  }
  if (std::find(cosetOf_.begin(), cosetOf_.end(), unset) != cosetOf_.end()) {
    throw PreconditionError("coset representatives miss a coset");
  }
}

std::pair<std::size_t, ElementId> TableCentralQuotient::decompose(ElementId y) const {
  const std::size_t j = cosetOf_[y];
  return {j, group_->mul(group_->inv(reps_[j]), y)};
}

UnitaryRep induceCentral(const CentralCharacter& cc, std::optional<std::vector<ElementId>> cosetReps) {
  const auto& group = cc.groupPtr();
  auto reps = cosetReps ? std::move(*cosetReps) : greedyTransversal(*group, cc.elements());
  auto q = std::make_shared<const TableCentralQuotient>(group, cc.elements(), std::move(reps));
  auto gamma = std::make_shared<const CentralCharacter>(cc);
  UnitaryRep rep(group, q->cosetCount(), [q, gamma](ElementId g) {
    return inducedMatrix(*q, g, [&](ElementId z) { return Phase((*gamma)(z)); });
  });
  const auto report = rep.verifyHomomorphism();
  if (!report.ok()) throw VerificationError("induced representation is not a homomorphism");
  return rep;
}

SeparationResult checkInducedSeparation(const UnitaryRep& rep, std::span<const ElementId> h) {
  const FiniteGroup& f = rep.group();
  std::vector<bool> inH(f.order(), false);
  for (ElementId z : h) inH.at(z) = true;
  SeparationResult out;
  for (std::size_t g = 0; g < f.order(); ++g) {
    if (inH[g]) continue;
    const double v = monomialNormMinusIdentity(rep(static_cast<ElementId>(g)));
    if (v < out.minNorm) {
      out.minNorm = v;
      out.argmin = static_cast<ElementId>(g);
    }
  }
  out.ok = out.minNorm >= std::sqrt(2.0) - 1e-12;
  return out;
}

bool checkInducedRestriction(const UnitaryRep& rep, const CentralCharacter& cc) {
  if (&rep.group() != &cc.group()) return false;
  for (ElementId z : cc.elements()) {
    if (!(rep(z) == MonomialMatrix::scalar(rep.dim(), Phase(cc(z))))) return false;
  }
  return true;
}

UnitaryRep directSum(const std::vector<UnitaryRep>& reps) {
  if (reps.empty()) throw PreconditionError("direct sum of no representations");
  std::size_t dim = 0;
  for (const auto& r : reps) {
    if (r.groupPtr() != reps.front().groupPtr()) {
      throw PreconditionError("direct sum of representations of different groups");
    }
    dim += r.dim();
  }
  return UnitaryRep(reps.front().groupPtr(), dim, [reps](ElementId g) {
    std::vector<MonomialMatrix> blocks;
    blocks.reserve(reps.size());
    for (const auto& r : reps) blocks.push_back(r(g));
    return directSum(blocks);
  });
}

}  // namespace qdkit
