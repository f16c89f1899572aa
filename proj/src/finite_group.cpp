#include "qdkit/finite_group.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qdkit {

AxiomReport verifyGroupAxioms(const GroupTable& g, std::uint64_t seed) {
  const std::size_t n = g.order;
  if (n == 0 || g.table.size() != n * n || g.identity >= n) {
    throw PreconditionError("group table dimensions are inconsistent");
  }
  AxiomReport report;
  auto at = [&](std::size_t i, std::size_t j) { return g.table[i * n + j]; };
  auto add = [&](const std::string& s) {
    if (report.violations.size() < 64) report.violations.push_back(s);
  };

  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = at(i, j);
      if (v >= n) {
        add("entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      } else if (seen[v]++) {
        add("latin square: row " + std::to_string(i) + " repeats " + std::to_string(v));
      }
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = at(j, i);
      if (v < n && seen[v]++) {
        add("latin square: column " + std::to_string(i) + " repeats " + std::to_string(v));
      }
    }
  }
  if (!report.ok()) return report;

  const auto e = g.identity;
  for (std::size_t x = 0; x < n; ++x) {
    if (at(e, x) != x || at(x, e) != x) {
      add("identity: " + std::to_string(e) + " does not fix " + std::to_string(x));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < n && !found; ++y) {
      found = at(x, y) == e && at(y, x) == e;
    }
    if (!found) add("inverse: element " + std::to_string(x) + " has no two-sided inverse");
  }

  auto checkTriple = [&](std::size_t x, std::size_t y, std::size_t z) {
    if (at(at(x, y), z) != at(x, at(y, z))) {
      std::ostringstream os;
      os << "associativity: (" << x << "," << y << "," << z << ")";
      add(os.str());
    }
  };
  if (n <= 256) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) checkTriple(x, y, z);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 10000; ++t) checkTriple(pick(rng), pick(rng), pick(rng));
  }
  return report;
}

FiniteGroup::FiniteGroup(GroupTable t) : order_(t.order), identity_(t.identity) {
  const auto report = verifyGroupAxioms(t);
  if (!report.ok()) throw VerificationError("not a group: " + report.violations.front());
  table_ = std::move(t.table);
  inverse_.resize(order_);
  for (ElementId x = 0; x < order_; ++x) {
    for (ElementId y = 0; y < order_; ++y) {
      if (mul(x, y) == identity_) {
        inverse_[x] = y;
        break;
      }
    }
  }
}

std::size_t FiniteGroup::elementOrder(ElementId x) const {
  std::size_t k = 1;
  for (ElementId y = x; y != identity_; y = mul(y, x)) ++k;
  return k;
}

bool FiniteGroup::isCentral(ElementId x) const {
  for (ElementId y = 0; y < order_; ++y) {
    if (!commutes(x, y)) return false;
  }
  return true;
}

std::vector<ElementId> FiniteGroup::center() const {
  std::vector<ElementId> z;
  for (ElementId x = 0; x < order_; ++x) {
    if (isCentral(x)) z.push_back(x);
  }
  return z;
}

std::vector<ElementId> FiniteGroup::generatedSubgroup(std::span<const ElementId> gens) const {
  std::vector<char> in(order_, 0);
  std::vector<ElementId> out{identity_};
  in[identity_] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (ElementId s : gens) {
      const ElementId y = mul(out[head], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGroup cyclicGroup(std::size_t n) {
  GroupTable t;
  t.order = n;
  t.table.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.table[i * n + j] = static_cast<ElementId>((i + j) % n);
  return FiniteGroup(std::move(t));
}

FiniteGroup heisenbergModGroup(std::uint32_t m) {
  const std::size_t n = static_cast<std::size_t>(m) * m * m;
  GroupTable t;
  t.order = n;
  t.table.resize(n * n);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b)
      for (std::uint64_t c = 0; c < m; ++c)
        for (std::uint64_t a2 = 0; a2 < m; ++a2)
          for (std::uint64_t b2 = 0; b2 < m; ++b2)
            for (std::uint64_t c2 = 0; c2 < m; ++c2) {
              t.table[static_cast<std::size_t>(heisenbergModIndex(m, a, b, c)) * n +
                      heisenbergModIndex(m, a2, b2, c2)] =
                  heisenbergModIndex(m, a + a2, b + b2, c + c2 + a * b2);
            }
  return FiniteGroup(std::move(t));
}

}  // namespace qdkit
