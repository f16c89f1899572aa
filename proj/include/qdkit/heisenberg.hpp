#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace qdkit {

/// Integer Heisenberg group, (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
/// As a matrix: [[1,a,c],[0,1,b],[0,0,1]].
struct HeisenbergElement {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  HeisenbergElement inverse() const { return {-a, -b, a * b - c}; }
  bool inCenter() const noexcept { return a == 0 && b == 0; }
  /// The central subgroup used as N for this instance is the whole center.
  bool inN() const noexcept { return inCenter(); }

  friend HeisenbergElement operator*(const HeisenbergElement& x, const HeisenbergElement& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b};
  }
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;

  std::string str() const;
};

struct HeisenbergModElement {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  friend bool operator==(const HeisenbergModElement&, const HeisenbergModElement&) = default;
};

HeisenbergModElement heisenbergReduce(const HeisenbergElement& x, std::uint64_t m);

}  // namespace qdkit

template <>
struct std::hash<qdkit::HeisenbergElement> {
  std::size_t operator()(const qdkit::HeisenbergElement& x) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(x.a);
    h = h * 1000003u ^ std::hash<std::int64_t>{}(x.b);
    return h * 1000003u ^ std::hash<std::int64_t>{}(x.c);
  }
};
