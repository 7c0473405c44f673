#pragma once

#include <cstdint>
#include <random>

namespace psqm {

/// The single seeded generator every sampled sweep and random table draws from.
///
/// Bounded draws use rejection sampling on the raw 64-bit stream instead of
/// std::uniform_int_distribution so sequences do not depend on the standard
/// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  int bit() { return static_cast<int>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace psqm
