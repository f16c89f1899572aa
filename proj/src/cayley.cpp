#include "qdkit/cayley.hpp"

namespace qdkit {

FreeBall freeBall(std::size_t radius, std::size_t cap) {
  const auto gens = freeGenerators();
  return ball<FreeWord>(FreeWord{}, std::span<const FreeWord>(gens), radius,
                        [](const FreeWord& g, const FreeWord& s) { return g * s; }, cap);
}

std::vector<FreeWord> freeSphere(std::size_t n, std::size_t cap) {
  const auto b = freeBall(n, cap);
  const auto s = b.sphere(n);
  return {s.begin(), s.end()};
}

SphereSlice firstLetterPartition(std::size_t n, std::size_t cap) {
  if (n == 0) throw PreconditionError("S_0 = {e} has no first-letter partition");
  SphereSlice slice;
  slice.n = n;
  for (auto& w : freeSphere(n, cap)) {
    slice.byFirstLetter[static_cast<std::size_t>(w.first())].push_back(std::move(w));
  }
  return slice;
}

}  // namespace qdkit
