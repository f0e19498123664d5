#pragma once

#include <numeric>
#include <vector>

#include "fpr/core.hpp"
#include "fpr/datagen.hpp"
#include "fpr/rng.hpp"

namespace fpr::test {

inline PreferenceProfile random_profile(int m, int n, std::uint64_t seed) {
  return gen_impartial_culture(m, n, seed);
}

// Random valid PSF: nonincreasing, nonnegative, last entry 0. Roughly half
// the draws come out as plain Borda.
inline ScoringFunction random_psf(int m, Rng& rng) {
  if (rng.next_below(2) == 0) return ScoringFunction::borda(m);
  std::vector<Satisfaction> alpha(m);
  alpha[m - 1] = 0;
  for (int i = m - 2; i >= 0; --i)
    alpha[i] = alpha[i + 1] + static_cast<Satisfaction>(rng.next_below(4));
  return ScoringFunction(std::move(alpha));
}

inline std::vector<int> random_subset(int m, int size, Rng& rng) {
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 1);
  for (int j = 0; j < size; ++j) {
    int r = j + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m - j)));
    std::swap(pool[j], pool[r]);
  }
  std::vector<int> subset(pool.begin(), pool.begin() + size);
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace fpr::test
