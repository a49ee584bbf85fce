#include "rnav/rng.hpp"

#include <cmath>
#include <numbers>

namespace rnav {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index, std::uint64_t component) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ component);
  return h;
}

double to_unit(std::uint64_t bits) {
  // Top 53 bits -> [0, 1) with full double resolution.
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double NormalStream::uniform(std::uint64_t sample_index,
                             std::uint64_t component) const {
  return to_unit(mix_key(seed_, stream_, sample_index, component));
}

double NormalStream::normal(std::uint64_t sample_index,
                            std::uint64_t component) const {
  const std::uint64_t k = mix_key(seed_, stream_, sample_index, component);
  const double u1 = 1.0 - to_unit(k);  // (0, 1], keeps log() finite
  const double u2 = to_unit(splitmix64(k + 0x9E3779B97F4A7C15ull));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rnav
