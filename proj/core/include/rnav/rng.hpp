#pragma once

#include <cstdint>

namespace rnav {

// Counter-based normal variate stream. Every draw is a pure function of
// (seed, stream id, sample index, component), so samples can be generated in
// any order — or in parallel — and still match a sequential run bit for bit.
// The stdlib engines are all stateful/sequential, hence this small generator:
// a SplitMix64 finalizer over the packed key feeding a Box-Muller transform.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id) {}

  /// Standard normal draw, deterministic in (seed, stream, index, component).
  double normal(std::uint64_t sample_index, std::uint64_t component) const;

  /// Uniform draw in [0, 1), same determinism guarantee.
  double uniform(std::uint64_t sample_index, std::uint64_t component) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// SplitMix64 finalizer (public-domain constants); exposed for key mixing.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rnav
