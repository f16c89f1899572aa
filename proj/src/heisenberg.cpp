#include "qdkit/heisenberg.hpp"

#include "qdkit/errors.hpp"

namespace qdkit {

std::string HeisenbergElement::str() const {
  return "1 " + std::to_string(a) + " " + std::to_string(c) + " 0 1 " + std::to_string(b) +
         " 0 0 1";
}

namespace {
std::uint64_t floorMod(std::int64_t x, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((x % mm) + mm) % mm);
}
}  // namespace

HeisenbergModElement heisenbergReduce(const HeisenbergElement& x, std::uint64_t m) {
  if (m == 0) throw PreconditionError("modulus must be positive");
  return {floorMod(x.a, m), floorMod(x.b, m), floorMod(x.c, m)};
}

}  // namespace qdkit
