#pragma once

#include <array>
#include <cstdint>

namespace hpca {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used both for hashing and
// for expanding seeds into generator state.
std::uint64_t mix64(std::uint64_t x);

// Stable 64-bit combiner: mix64(h ^ mix64(v)). Chain to hash tuples.
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);

// xoshiro256++ (Blackman & Vigna) with substreams. The state of stream
// (seed, stream) is the first four outputs of a SplitMix64 sequence started
// at hash_combine(seed, stream), so distinct stream ids give statistically
// independent sequences for the same seed.
//
// Derived variates use fixed algorithms so results are reproducible within
// this implementation: uniforms take the top 53 bits, Gaussians use the
// Marsaglia polar method, Poisson counts use exact sequential-search
// inversion (means above 30 are split into independent chunks of at most 30
// and summed, which is still exact).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();   // standard normal
  long poisson(double mean);

 private:
  long poisson_inversion(double mean);

  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hpca
