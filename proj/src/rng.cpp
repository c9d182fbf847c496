#include "tlscond/rng.hpp"

#include <cmath>
#include <numbers>

namespace tlscond {

double Rng::uniform_open() {
  // (k + 0.5) / 2^52 for k in [0, 2^52) is exact and never hits 0 or 1.
  const std::uint64_t k = engine_() >> 12;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-52;
}

double Rng::uniform_pm1() { return 2.0 * uniform_open() - 1.0; }

double Rng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace tlscond
