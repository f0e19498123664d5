#include "fpr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "fpr/datagen.hpp"
#include "fpr/exact.hpp"

namespace fpr {

namespace {

int round_committee(int m, double ratio) {
  return std::clamp(static_cast<int>(std::lround(m * ratio)), 1, m);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  for (auto& part : parts) {
    std::size_t first = part.find_first_not_of(" \t");
    std::size_t last = part.find_last_not_of(" \t");
    part = first == std::string::npos ? "" : part.substr(first, last - first + 1);
  }
  parts.erase(std::remove_if(parts.begin(), parts.end(),
                             [](const std::string& p) { return p.empty(); }),
              parts.end());
  return parts;
}

long long config_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected integer, got '" + value + "'");
  }
}

double config_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected number, got '" + value + "'");
  }
}

bool config_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + ": expected boolean, got '" + value + "'");
}

double mean_of(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

double sd_of(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / (values.size() - 1));
}

}  // namespace

PreferenceProfile generate_profile(const std::string& model, int m, int n, std::uint64_t seed,
                                   double urn_ratio, double phi,
                                   const std::optional<std::vector<int>>& center,
                                   int components) {
  if (model == "ic") return gen_impartial_culture(m, n, seed);
  if (model == "urn") return gen_urn(m, n, seed, UrnParams{urn_ratio});
  if (model == "mallows") {
    std::vector<int> order;
    if (center) {
      order = *center;
    } else {
      order.resize(m);
      std::iota(order.begin(), order.end(), 1);
    }
    return gen_mallows(m, n, order, phi, seed);
  }
  if (model == "mixture") {
    return gen_mallows_mixture(m, n, seed, random_mixture_params(m, components, seed));
  }
  throw ConfigError("model: unknown data model '" + model + "'");
}

SolveResult run_algorithm(Algorithm algorithm, Rule rule, const PreferenceProfile& profile,
                          const ScoringFunction& psf, int committee_size, int beam_width,
                          int samples, std::uint64_t seed, long long subset_limit) {
  if (!algorithm_applies(algorithm, rule))
    throw std::invalid_argument(std::string("algorithm '") + to_string(algorithm) +
                                "' does not apply to rule " + to_string(rule));
  switch (algorithm) {
    case Algorithm::kA:
      return algorithm_a(profile, psf, committee_size);
    case Algorithm::kB:
      return algorithm_b(profile, psf, committee_size);
    case Algorithm::kC:
      return rule == Rule::kMonroe
                 ? algorithm_c_monroe(profile, psf, committee_size, beam_width)
                 : algorithm_c_cc(profile, psf, committee_size, beam_width);
    case Algorithm::kGM:
      return algorithm_gm(profile, psf, committee_size, rule);
    case Algorithm::kP:
      return algorithm_p(profile, psf, committee_size);
    case Algorithm::kR:
      return algorithm_r(profile, psf, committee_size, rule, SamplingPlan{samples}, seed);
    case Algorithm::kExact:
      return exact_solver(profile, psf, committee_size, rule, ExactConfig{subset_limit});
  }
  throw std::invalid_argument("unknown algorithm");
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig config;
  config.algorithms.clear();

  std::optional<int> m, n, k;
  std::optional<std::vector<int>> m_list, n_list;
  std::optional<std::vector<double>> km_list;
  std::optional<double> km_ratio;
  std::optional<std::vector<SweepPoint>> points;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    auto trim = [](std::string text) {
      std::size_t a = text.find_first_not_of(" \t");
      std::size_t b = text.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : text.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");

    if (key == "model") {
      config.model = value;
    } else if (key == "urn_ratio") {
      config.urn_ratio = config_double(key, value);
    } else if (key == "phi") {
      config.phi = config_double(key, value);
    } else if (key == "components") {
      config.components = static_cast<int>(config_int(key, value));
    } else if (key == "center") {
      std::vector<int> order;
      for (const auto& token : split_list(value, ','))
        order.push_back(static_cast<int>(config_int(key, token)));
      config.center = std::move(order);
    } else if (key == "m") {
      m = static_cast<int>(config_int(key, value));
    } else if (key == "n") {
      n = static_cast<int>(config_int(key, value));
    } else if (key == "k") {
      k = static_cast<int>(config_int(key, value));
    } else if (key == "points") {
      std::vector<SweepPoint> parsed;
      for (const auto& token : split_list(value, ',')) {
        auto dims = split_list(token, ':');
        if (dims.size() != 3) throw ConfigError("points: expected 'm:n:K' entries");
        parsed.push_back(SweepPoint{static_cast<int>(config_int(key, dims[0])),
                                    static_cast<int>(config_int(key, dims[1])),
                                    static_cast<int>(config_int(key, dims[2]))});
      }
      points = std::move(parsed);
    } else if (key == "m_list") {
      std::vector<int> parsed;
      for (const auto& token : split_list(value, ','))
        parsed.push_back(static_cast<int>(config_int(key, token)));
      m_list = std::move(parsed);
    } else if (key == "n_list") {
      std::vector<int> parsed;
      for (const auto& token : split_list(value, ','))
        parsed.push_back(static_cast<int>(config_int(key, token)));
      n_list = std::move(parsed);
    } else if (key == "km_list") {
      std::vector<double> parsed;
      for (const auto& token : split_list(value, ','))
        parsed.push_back(config_double(key, token));
      km_list = std::move(parsed);
    } else if (key == "km_ratio") {
      km_ratio = config_double(key, value);
    } else if (key == "rule") {
      try {
        config.rule = rule_from_string(value);
      } catch (const std::invalid_argument& error) {
        throw ConfigError(std::string("rule: ") + error.what());
      }
    } else if (key == "algorithms") {
      for (const auto& token : split_list(value, ',')) {
        try {
          config.algorithms.push_back(algorithm_from_string(token));
        } catch (const std::invalid_argument& error) {
          throw ConfigError(std::string("algorithms: ") + error.what());
        }
      }
    } else if (key == "psf") {
      config.psf = value;
    } else if (key == "trials") {
      config.trials = static_cast<int>(config_int(key, value));
    } else if (key == "seed") {
      config.base_seed = static_cast<std::uint64_t>(config_int(key, value));
    } else if (key == "exact") {
      config.compute_exact = config_bool(key, value);
    } else if (key == "d") {
      config.beam_width = static_cast<int>(config_int(key, value));
    } else if (key == "samples") {
      config.samples = static_cast<int>(config_int(key, value));
    } else if (key == "subset_limit") {
      config.exact_subset_limit = config_int(key, value);
    } else if (key == "threads") {
      config.threads = static_cast<int>(config_int(key, value));
    } else if (key == "out") {
      config.out = value;
    } else if (key == "summary") {
      config.summary_out = value;
    } else {
      throw ConfigError("unknown key: " + key);
    }
  }

  int sweep_forms = (points ? 1 : 0) + (m_list ? 1 : 0) + (n_list ? 1 : 0) + (km_list ? 1 : 0);
  if (sweep_forms > 1) throw ConfigError("points: choose a single sweep form");
  if (points) {
    config.points = *points;
  } else if (m_list) {
    if (!km_ratio) throw ConfigError("km_ratio: required for an m sweep");
    if (!n) throw ConfigError("n: required for an m sweep");
    for (int mi : *m_list) config.points.push_back({mi, *n, round_committee(mi, *km_ratio)});
  } else if (km_list) {
    if (!m || !n) throw ConfigError("m: m and n required for a K/m sweep");
    for (double ratio : *km_list) config.points.push_back({*m, *n, round_committee(*m, ratio)});
  } else if (n_list) {
    if (!m || !k) throw ConfigError("m: m and k required for an n sweep");
    for (int ni : *n_list) config.points.push_back({*m, ni, *k});
  } else {
    if (!m || !n || !k) throw ConfigError("m: m, n and k required without a sweep");
    config.points.push_back({*m, *n, *k});
  }
  return config;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_experiment_config(in);
}

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.points.empty()) throw ConfigError("points: at least one (m,n,K) point required");
  for (const auto& point : config.points) {
    if (point.m < 1) throw ConfigError("points: m must be >= 1");
    if (point.n < 1) throw ConfigError("points: n must be >= 1");
    if (point.k < 1 || point.k > point.m) throw ConfigError("points: K must be in 1..m");
  }
  if (config.algorithms.empty()) throw ConfigError("algorithms: at least one required");
  for (Algorithm algorithm : config.algorithms)
    if (!algorithm_applies(algorithm, config.rule))
      throw ConfigError(std::string("algorithms: '") + to_string(algorithm) +
                        "' does not apply to rule " + to_string(config.rule));
  if (config.trials < 1) throw ConfigError("trials: must be >= 1");
  if (config.beam_width < 1) throw ConfigError("d: must be >= 1");
  if (config.samples < 1) throw ConfigError("samples: must be >= 1");
  if (!(config.phi >= 0.0 && config.phi <= 1.0)) throw ConfigError("phi: must be in [0, 1]");
  if (config.urn_ratio < 0) throw ConfigError("urn_ratio: must be >= 0");
  if (config.components < 1) throw ConfigError("components: must be >= 1");

  bool exact_needed =
      config.compute_exact || std::find(config.algorithms.begin(), config.algorithms.end(),
                                        Algorithm::kExact) != config.algorithms.end();
  if (exact_needed) {
    for (const auto& point : config.points)
      if (binomial_clamped(point.m, point.k, config.exact_subset_limit) >
          config.exact_subset_limit)
        throw ConfigError("exact: C(m,K) exceeds subset_limit at point " +
                          std::to_string(point.m) + ":" + std::to_string(point.n) + ":" +
                          std::to_string(point.k));
  }
  if (config.center) {
    for (const auto& point : config.points)
      if (static_cast<int>(config.center->size()) != point.m)
        throw ConfigError("center: length must equal m at every point");
  }
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  validate_config(config);

  std::optional<ScoringFunction> file_psf;
  if (config.psf != "borda") {
    file_psf = read_psf_file(config.psf);
    for (const auto& point : config.points)
      if (file_psf->size() != point.m)
        throw ConfigError("psf: length " + std::to_string(file_psf->size()) +
                          " does not match m at every point");
  }

  bool exact_needed =
      config.compute_exact || std::find(config.algorithms.begin(), config.algorithms.end(),
                                        Algorithm::kExact) != config.algorithms.end();

  const int point_count = static_cast<int>(config.points.size());
  const int task_count = point_count * config.trials;
  std::vector<std::vector<ResultRecord>> task_records(task_count);

  std::atomic<int> next_task{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      int task = next_task.fetch_add(1);
      if (task >= task_count) return;
      try {
        const SweepPoint& point = config.points[task / config.trials];
        const int trial = task % config.trials;
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial);
        PreferenceProfile profile =
            generate_profile(config.model, point.m, point.n, seed, config.urn_ratio,
                             config.phi, config.center, config.components);
        ScoringFunction psf = file_psf ? *file_psf : ScoringFunction::borda(point.m);
        Satisfaction c_ideal = ideal_satisfaction(profile, psf);

        std::optional<Satisfaction> c_opt;
        std::optional<SolveResult> exact_result;
        if (exact_needed) {
          exact_result = exact_solver(profile, psf, point.k, config.rule,
                                      ExactConfig{config.exact_subset_limit});
          c_opt = exact_result->satisfaction;
        }

        auto& records = task_records[task];
        for (Algorithm algorithm : config.algorithms) {
          SolveResult result =
              algorithm == Algorithm::kExact
                  ? *exact_result
                  : run_algorithm(algorithm, config.rule, profile, psf, point.k,
                                  config.beam_width, config.samples, seed,
                                  config.exact_subset_limit);
          ResultRecord record;
          record.algorithm = to_string(algorithm);
          record.rule = to_string(config.rule);
          record.psf = config.psf;
          record.m = point.m;
          record.n = point.n;
          record.k = point.k;
          if (algorithm == Algorithm::kC) record.d = config.beam_width;
          if (algorithm == Algorithm::kR) record.samples = config.samples;
          record.seed = seed;
          record.satisfaction = result.satisfaction;
          record.c_ideal = c_ideal;
          record.ratio_ideal =
              c_ideal == 0 ? 0.0
                           : static_cast<double>(result.satisfaction) / c_ideal;
          if (c_opt) {
            record.c_opt = *c_opt;
            record.ratio_opt =
                *c_opt == 0 ? 1.0 : static_cast<double>(result.satisfaction) / *c_opt;
          }
          record.time_ms = result.elapsed_ms;
          records.push_back(std::move(record));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  int threads = config.threads > 0
                    ? config.threads
                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, task_count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentOutput output;
  for (auto& records : task_records)
    for (auto& record : records) output.records.push_back(std::move(record));

  // Per-point, per-algorithm aggregates.
  for (int p = 0; p < point_count; ++p) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      std::vector<double> ratio_ideal, ratio_opt;
      for (int trial = 0; trial < config.trials; ++trial) {
        const auto& record = output.records[(p * config.trials + trial) *
                                                config.algorithms.size() + a];
        ratio_ideal.push_back(record.ratio_ideal);
        if (record.ratio_opt) ratio_opt.push_back(*record.ratio_opt);
      }
      SummaryRow row;
      row.point = config.points[p];
      row.algorithm = config.algorithms[a];
      row.trials = config.trials;
      row.mean_ratio_ideal = mean_of(ratio_ideal);
      row.sd_ratio_ideal = sd_of(ratio_ideal, row.mean_ratio_ideal);
      if (static_cast<int>(ratio_opt.size()) == config.trials) {
        row.mean_ratio_opt = mean_of(ratio_opt);
        row.sd_ratio_opt = sd_of(ratio_opt, *row.mean_ratio_opt);
      }
      output.summary.push_back(row);
    }
  }
  return output;
}

std::string write_summary_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream out;
  out << "m,n,K,algorithm,trials,mean_ratio_opt,sd_ratio_opt,mean_ratio_ideal,sd_ratio_ideal\n";
  for (const auto& row : summary) {
    out << row.point.m << "," << row.point.n << "," << row.point.k << ","
        << to_string(row.algorithm) << "," << row.trials << ",";
    if (row.mean_ratio_opt) out << format_ratio(*row.mean_ratio_opt);
    out << ",";
    if (row.sd_ratio_opt) out << format_ratio(*row.sd_ratio_opt);
    out << "," << format_ratio(row.mean_ratio_ideal) << "," << format_ratio(row.sd_ratio_ideal)
        << "\n";
  }
  return out.str();
}

std::string format_summary_table(const std::vector<SummaryRow>& summary) {
  std::ostringstream out;
  out << "  m     n   K  alg    trials  mean C/C_opt  sd      mean C/C_ideal  sd\n";
  for (const auto& row : summary) {
    char line[160];
    std::snprintf(line, sizeof(line), "%3d %5d %3d  %-5s  %6d  %-12s  %-6s  %-14s  %s\n",
                  row.point.m, row.point.n, row.point.k, to_string(row.algorithm), row.trials,
                  row.mean_ratio_opt ? format_ratio(*row.mean_ratio_opt).c_str() : "-",
                  row.sd_ratio_opt ? format_ratio(*row.sd_ratio_opt).c_str() : "-",
                  format_ratio(row.mean_ratio_ideal).c_str(),
                  format_ratio(row.sd_ratio_ideal).c_str());
    out << line;
  }
  return out.str();
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.points.empty()) throw ConfigError("points: at least one (m,n,K) point required");
  if (config.algorithms.empty()) throw ConfigError("algorithms: at least one required");
  if (config.reps < 1) throw ConfigError("reps: must be >= 1");
  for (const auto& point : config.points)
    if (point.m < 1 || point.n < 1 || point.k < 1 || point.k > point.m)
      throw ConfigError("points: bad (m,n,K) point");

  std::vector<BenchRow> rows;
  for (const auto& point : config.points) {
    PreferenceProfile profile = generate_profile(config.model, point.m, point.n, config.seed,
                                                 config.urn_ratio, 0.5, std::nullopt, 5);
    ScoringFunction psf = ScoringFunction::borda(point.m);
    for (const auto& [algorithm, rule] : config.algorithms) {
      std::vector<double> times;
      for (int rep = 0; rep <= config.reps; ++rep) {
        SolveResult result =
            run_algorithm(algorithm, rule, profile, psf, point.k, config.beam_width,
                          config.samples, config.seed, 2'000'000);
        if (rep > 0) times.push_back(result.elapsed_ms);  // rep 0 is the warm-up
      }
      std::sort(times.begin(), times.end());
      double median = times.size() % 2 == 1
                          ? times[times.size() / 2]
                          : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
      rows.push_back(BenchRow{algorithm, rule, point, config.reps, median});
    }
  }
  return rows;
}

std::string write_bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "algorithm,rule,m,n,K,reps,median_ms\n";
  for (const auto& row : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%s,%s,%d,%d,%d,%d,%.3f\n", to_string(row.algorithm),
                  to_string(row.rule), row.point.m, row.point.n, row.point.k, row.reps,
                  row.median_ms);
    out << line;
  }
  return out.str();
}

}  // namespace fpr
