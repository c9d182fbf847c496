#pragma once

#include <cstdint>
#include <random>

namespace tlscond {

// Seeded generator used by every random construction in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The real-valued transforms below are written out explicitly
// instead of using <random> distributions, whose algorithms differ between
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on the open interval (0, 1), 52-bit resolution.
  double uniform_open();
  // Uniform on (-1, 1): 2 U - 1 with U from uniform_open().
  double uniform_pm1();
  // Standard normal by Box-Muller; consumes two uniforms per call.
  double normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// Seed of trial `index` in a batch seeded with `base`. Distinct indices give
// statistically independent streams.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

}  // namespace tlscond
