#include "psqm/rng.hpp"

#include <limits>
#include <stdexcept>

namespace psqm {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::below requires a positive bound");
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) {
      return v % bound;
    }
  }
}

}  // namespace psqm
