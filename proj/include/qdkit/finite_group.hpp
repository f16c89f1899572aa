#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdkit/errors.hpp"

namespace qdkit {

using ElementId = std::uint32_t;

/// Raw multiplication table, possibly invalid. table[i * order + j] = i·j.
struct GroupTable {
  std::size_t order = 0;
  std::vector<ElementId> table;
  ElementId identity = 0;
};

struct AxiomReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks Latin-square, identity, inverse and associativity. Associativity
/// is exhaustive for order <= 256, otherwise 10^4 seeded random triples.
/// Throws PreconditionError if the table dimensions are inconsistent.
AxiomReport verifyGroupAxioms(const GroupTable& g, std::uint64_t seed = 0);

/// A finite group stored as a dense multiplication table. Construction
/// verifies the group axioms.
class FiniteGroup {
 public:
  explicit FiniteGroup(GroupTable table);

  std::size_t order() const noexcept { return order_; }
  ElementId identity() const noexcept { return identity_; }
  ElementId mul(ElementId x, ElementId y) const { return table_[x * order_ + y]; }
  ElementId inv(ElementId x) const { return inverse_[x]; }
  std::size_t elementOrder(ElementId x) const;
  bool commutes(ElementId x, ElementId y) const { return mul(x, y) == mul(y, x); }
  bool isCentral(ElementId x) const;
  std::vector<ElementId> center() const;

  /// Subgroup generated by `gens`, sorted by index.
  std::vector<ElementId> generatedSubgroup(std::span<const ElementId> gens) const;

 private:
  std::size_t order_;
  std::vector<ElementId> table_;
  std::vector<ElementId> inverse_;
  ElementId identity_;
};

/// Z/n with element k ↦ k.
FiniteGroup cyclicGroup(std::size_t n);

/// Integer Heisenberg group mod m; (a,b,c) has index (a·m + b)·m + c and
/// product (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
FiniteGroup heisenbergModGroup(std::uint32_t m);

inline ElementId heisenbergModIndex(std::uint32_t m, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c) {
  return static_cast<ElementId>(((a % m) * m + (b % m)) * m + (c % m));
}

/// Enumerates the group generated by `gens` under `mul` (BFS by right
/// multiplication, identity first) and returns the table together with the
/// element list in index order. Throws ResourceCapError past `cap` elements.
template <class T, class Mul, class Hash = std::hash<T>>
std::pair<FiniteGroup, std::vector<T>> enumerateGroup(const T& identity,
                                                      std::span<const T> gens, Mul mul,
                                                      std::size_t cap = 5000) {
  std::vector<T> elems{identity};
  std::unordered_map<T, ElementId, Hash> index{{identity, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const T& s : gens) {
      T y = mul(elems[head], s);
      if (index.emplace(y, static_cast<ElementId>(elems.size())).second) {
        if (elems.size() >= cap) {
          throw ResourceCapError("group enumeration exceeded " + std::to_string(cap) +
                                 " elements");
        }
        elems.push_back(std::move(y));
      }
    }
  }
  GroupTable t;
  t.order = elems.size();
  t.identity = 0;
  t.table.resize(t.order * t.order);
  for (std::size_t i = 0; i < t.order; ++i) {
    for (std::size_t j = 0; j < t.order; ++j) {
      t.table[i * t.order + j] = index.at(mul(elems[i], elems[j]));
    }
  }
  return {FiniteGroup(std::move(t)), std::move(elems)};
}

}  // namespace qdkit
