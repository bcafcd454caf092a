#pragma once

// Random streams: xoshiro256** seeded through SplitMix64. Replicate streams
// are keyed by derive_seed(seed, index) so that a replicate's draws depend
// only on (seed, index), never on which thread runs it. All conversions to
// real variates are written out here rather than delegated to <random>
// distributions, whose algorithms differ between standard libraries.

#include <array>
#include <cstdint>
#include <limits>

namespace tailcone {

// One SplitMix64 output step applied to x (a bijective 64-bit mixer).
std::uint64_t splitmix64(std::uint64_t x);

// Seed for replicate `index` of a study seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open();
  // Unit exponential.
  double exponential();
  // Standard normal (Marsaglia polar method).
  double normal();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 4> s_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tailcone
