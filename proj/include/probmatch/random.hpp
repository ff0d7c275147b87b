#pragma once

#include <cstdint>
#include <limits>

namespace probmatch {

/// Counter-based random stream keyed by (seed, stream).
///
/// Draw k of stream s is a fixed function of (seed, s, k), so a run that
/// gives experiment i its own stream i is reproducible under any thread
/// partition. Output is SplitMix64 finalization of a Weyl sequence; it is
/// identical across platforms.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t draws() const { return counter_; }

  // UniformRandomBitGenerator interface.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace probmatch
