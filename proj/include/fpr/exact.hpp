#pragma once

#include "fpr/algorithms.hpp"
#include "fpr/core.hpp"

namespace fpr {

struct ExactConfig {
  long long subset_limit = 2'000'000;
  int threads = 1;  // subset ranges split across threads; merge is order-independent
};

// The true optimum by enumerating every K-subset in lexicographic order and
// matching it optimally under `rule`. Ties resolve to the lexicographically
// first committee. Throws SizeLimitError when C(m,K) exceeds the configured
// subset limit.
SolveResult exact_solver(const PreferenceProfile& profile, const ScoringFunction& psf,
                         int committee_size, Rule rule, const ExactConfig& config = {});

// C(m, K) clamped to `limit + 1` to avoid overflow.
long long binomial_clamped(int m, int k, long long limit);

}  // namespace fpr
