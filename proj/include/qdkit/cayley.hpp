#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdkit/errors.hpp"
#include "qdkit/free_word.hpp"

namespace qdkit {

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

/// Ball of radius R in a Cayley graph. Elements are in BFS order (identity
/// first); inside a sphere the order follows the parent's position and then
/// the generator order. For F_2 with generators (a, b, a^-1, b^-1) this is
/// shortlex order.
template <class G, class Hash = std::hash<G>>
class BallIndex {
 public:
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<G>& elements() const noexcept { return elements_; }
  const G& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> find(const G& g) const {
    const auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const G& g) const { return index_.count(g) != 0; }

  /// Word length of element i.
  std::size_t lengthAt(std::size_t i) const { return lengths_[i]; }
  /// Number of elements of length <= r (a prefix of the basis).
  std::size_t prefixSize(std::size_t r) const {
    return r >= sphereStart_.size() - 1 ? size() : sphereStart_[r + 1];
  }
  std::size_t sphereSize(std::size_t n) const {
    return n > radius_ ? 0 : sphereStart_[n + 1] - sphereStart_[n];
  }
  std::span<const G> sphere(std::size_t n) const {
    if (n > radius_) return {};
    return std::span<const G>(elements_).subspan(sphereStart_[n], sphereSize(n));
  }

  template <class Mul>
  static BallIndex build(const G& identity, std::span<const G> generators, std::size_t radius,
                         Mul mul, std::size_t cap) {
    BallIndex b;
    b.radius_ = radius;
    b.elements_.push_back(identity);
    b.lengths_.push_back(0);
    b.index_.emplace(identity, 0);
    b.sphereStart_ = {0, 1};
    std::size_t begin = 0;
    for (std::size_t n = 1; n <= radius; ++n) {
      const std::size_t end = b.elements_.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (const G& s : generators) {
          G y = mul(b.elements_[i], s);
          if (b.index_.contains(y)) continue;
          if (b.elements_.size() >= cap) {
            throw ResourceCapError("ball of radius " + std::to_string(radius) +
                                   " exceeds cap of " + std::to_string(cap) + " elements");
          }
          b.index_.emplace(y, b.elements_.size());
          b.elements_.push_back(std::move(y));
          b.lengths_.push_back(n);
        }
      }
      begin = end;
      b.sphereStart_.push_back(b.elements_.size());
    }
    return b;
  }

 private:
  std::size_t radius_ = 0;
  std::vector<G> elements_;
  std::vector<std::size_t> lengths_;
  std::vector<std::size_t> sphereStart_;  // size radius + 2
  std::unordered_map<G, std::size_t, Hash> index_;
};

/// BFS ball of radius R; `mul(g, s)` is right multiplication by a generator.
/// Throws ResourceCapError when more than `cap` elements would be produced.
template <class G, class Hash = std::hash<G>, class Mul>
BallIndex<G, Hash> ball(const G& identity, std::span<const G> generators, std::size_t radius,
                        Mul mul, std::size_t cap = kDefaultBallCap) {
  return BallIndex<G, Hash>::build(identity, generators, radius, mul, cap);
}

using FreeBall = BallIndex<FreeWord>;

/// Ball in F_2 with generators a, b, a^-1, b^-1.
FreeBall freeBall(std::size_t radius, std::size_t cap = kDefaultBallCap);

/// Elements of F_2 of word length exactly n, in shortlex order.
std::vector<FreeWord> freeSphere(std::size_t n, std::size_t cap = kDefaultBallCap);

/// S_n split by first letter (index = Letter).
struct SphereSlice {
  std::size_t n = 0;
  std::array<std::vector<FreeWord>, 4> byFirstLetter;
};

/// Throws PreconditionError for n = 0 (the identity has no first letter).
SphereSlice firstLetterPartition(std::size_t n, std::size_t cap = kDefaultBallCap);

}  // namespace qdkit
