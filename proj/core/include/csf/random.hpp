#pragma once

#include <cstdint>
#include <limits>

namespace csf {

// Counter-based generator: the i-th output is a fixed bijective mix of (key, i), so any
// stream can be split or replayed from its (key, counter) pair. The mix is the SplitMix64
// finaliser. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng() = default;
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  // Independent stream for (seed, stream index), e.g. one per chain.
  static CounterRng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL)));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + kGamma * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, bound), bound > 0 (multiply-shift, bias < 2^-64 * bound).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<WideUnsigned>((*this)()) * bound) >> 64);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  __extension__ typedef unsigned __int128 WideUnsigned;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace csf
