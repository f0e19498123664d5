#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fpr {

// SplitMix64 mixing step; used to spread seeds before feeding mt19937_64.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for an independent substream. Profile generators give each vote its
// own stream: vote i (0-based) draws from Rng(derive_stream(seed, i)), so a
// profile is reproducible vote-by-vote regardless of generation order.
// Parameter draws (e.g. random mixture vectors) use stream id 2^63.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream);

inline constexpr std::uint64_t kParamsStream = 1ULL << 63;

// mt19937_64 with hand-rolled bounded draws. The engine's output sequence is
// fixed by the standard; std::uniform_int_distribution is not, so bounded
// integers use rejection sampling to stay stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fpr
