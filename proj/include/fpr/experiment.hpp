#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fpr/algorithms.hpp"
#include "fpr/core.hpp"
#include "fpr/io.hpp"

namespace fpr {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepPoint {
  int m = 0;
  int n = 0;
  int k = 0;

  bool operator==(const SweepPoint&) const = default;
};

// One batched experiment: a data model, a list of (m, n, K) points, a rule,
// and the algorithms to run at each point. Trial t of a point generates a
// fresh profile with seed base_seed + t, so any trial can be replayed alone.
struct ExperimentConfig {
  std::string model = "ic";  // ic | urn | mallows | mixture
  double urn_ratio = 0.05;
  double phi = 0.5;
  int components = 5;
  std::optional<std::vector<int>> center;  // mallows center; identity when absent

  std::vector<SweepPoint> points;
  Rule rule = Rule::kMonroe;
  std::vector<Algorithm> algorithms;
  std::string psf = "borda";  // "borda" or a psf file path
  int trials = 50;
  std::uint64_t base_seed = 1;
  bool compute_exact = false;
  int beam_width = 15;
  int samples = 100;
  long long exact_subset_limit = 2'000'000;
  int threads = 0;  // 0 = hardware concurrency

  std::string out;          // optional results csv path (used by the CLI)
  std::string summary_out;  // optional summary csv path
};

// Flat `key = value` config file; '#' starts a comment. Keys: model,
// urn_ratio, phi, center, components, m, n, k, points, m_list, km_ratio,
// km_list, n_list, rule, algorithms, psf, trials, seed, exact, d, samples,
// subset_limit, threads, out, summary.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

struct SummaryRow {
  SweepPoint point;
  Algorithm algorithm = Algorithm::kA;
  int trials = 0;
  double mean_ratio_ideal = 0.0;
  double sd_ratio_ideal = 0.0;
  std::optional<double> mean_ratio_opt;
  std::optional<double> sd_ratio_opt;
};

struct ExperimentOutput {
  std::vector<ResultRecord> records;  // ordered by (point, trial, algorithm)
  std::vector<SummaryRow> summary;
};

// Runs every (point, trial) task, in parallel when threads allow; output
// order is independent of scheduling.
ExperimentOutput run_experiment(const ExperimentConfig& config);

std::string write_summary_csv(const std::vector<SummaryRow>& summary);
std::string format_summary_table(const std::vector<SummaryRow>& summary);

struct BenchConfig {
  std::vector<SweepPoint> points;
  std::vector<std::pair<Algorithm, Rule>> algorithms;
  std::string model = "ic";
  double urn_ratio = 0.05;
  int reps = 3;  // timed repetitions after one warm-up
  std::uint64_t seed = 1;
  int beam_width = 15;
  int samples = 100;
};

struct BenchRow {
  Algorithm algorithm;
  Rule rule;
  SweepPoint point;
  int reps = 0;
  double median_ms = 0.0;
};

std::vector<BenchRow> run_bench(const BenchConfig& config);
std::string write_bench_csv(const std::vector<BenchRow>& rows);

// Generates a profile for any of the named data models (shared by the
// experiment runner and the CLI).
PreferenceProfile generate_profile(const std::string& model, int m, int n, std::uint64_t seed,
                                   double urn_ratio, double phi,
                                   const std::optional<std::vector<int>>& center,
                                   int components);

// Dispatches one solve. Throws std::invalid_argument for algorithm/rule
// pairs that do not apply (A and B are Monroe-only, P is CC-only).
SolveResult run_algorithm(Algorithm algorithm, Rule rule, const PreferenceProfile& profile,
                          const ScoringFunction& psf, int committee_size, int beam_width,
                          int samples, std::uint64_t seed, long long subset_limit);

}  // namespace fpr
