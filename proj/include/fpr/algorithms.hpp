#pragma once

#include <cstdint>
#include <string>

#include "fpr/assign.hpp"
#include "fpr/core.hpp"

namespace fpr {

enum class Algorithm { kA, kB, kC, kGM, kP, kR, kExact };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

// A and B are Monroe-only, P is CC-only; the rest serve both rules.
bool algorithm_applies(Algorithm algorithm, Rule rule);

struct SolveResult {
  Algorithm algorithm = Algorithm::kA;
  Rule rule = Rule::kMonroe;
  std::vector<int> winners;
  Assignment assignment;
  Satisfaction satisfaction = 0;
  double elapsed_ms = 0.0;
  std::string notes;
};

struct SamplingPlan {
  int samples = 100;
  double lambda = 0.99;
  double epsilon = 0.1;
};

// Greedy Monroe: K rounds, each locking the highest-scoring unused
// alternative to its quota of best unassigned agents. Round i with n_rem
// unassigned agents and k_rem open seats uses quota ceil(n_rem/k_rem), which
// keeps the final load profile balanced.
SolveResult algorithm_a(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size);

// Algorithm A's winner set, reassigned optimally by the Monroe flow.
SolveResult algorithm_b(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size);

// Beam-search generalization of B keeping up to `beam_width` partial
// assignments; every surviving winner set is flow-reoptimized at the end.
SolveResult algorithm_c_monroe(const PreferenceProfile& profile, const ScoringFunction& psf,
                               int committee_size, int beam_width);

// Greedy marginal improvement for either rule. Monroe marginals use the
// capacity-bounded partial assignment (ceil(n/K) per member); the returned
// Monroe assignment re-runs the balanced flow.
SolveResult algorithm_gm(const PreferenceProfile& profile, const ScoringFunction& psf,
                         int committee_size, Rule rule);

// Beam search over winner sets for Chamberlin-Courant.
SolveResult algorithm_c_cc(const PreferenceProfile& profile, const ScoringFunction& psf,
                           int committee_size, int beam_width);

// Position-restriction cover heuristic for Chamberlin-Courant. Its quality
// bound assumes Borda; other PSFs are accepted and flagged in `notes`.
SolveResult algorithm_p(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size);

// Best of `plan.samples` uniformly sampled committees, each matched
// optimally under `rule`.
SolveResult algorithm_r(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size, Rule rule, const SamplingPlan& plan,
                        std::uint64_t seed);

// Principal branch of w * e^w = x for x >= 0; absolute error <= 1e-9.
double lambert_w(double x);

// Samples needed to hit the random-sampling quality target with probability
// lambda at accuracy epsilon: ceil(512 * log2(1/(1-lambda)) / (K eps^2)),
// clamped to >= 1.
long long sample_count(double lambda, double epsilon, int committee_size);

// Worst-case quality ratio of an algorithm under the Borda PSF, clamped to
// [0, 1]. Throws for pairs without a known bound.
double theoretical_bound(Algorithm algorithm, Rule rule, int m, int committee_size);

}  // namespace fpr
