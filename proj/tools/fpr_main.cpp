#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fpr/datagen.hpp"
#include "fpr/exact.hpp"
#include "fpr/experiment.hpp"
#include "fpr/io.hpp"

namespace {

using namespace fpr;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    values.push_back(std::stoi(token));
  }
  return values;
}

std::vector<SweepPoint> parse_points(const std::string& text) {
  std::vector<SweepPoint> points;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    SweepPoint point;
    if (std::sscanf(token.c_str(), "%d:%d:%d", &point.m, &point.n, &point.k) != 3)
      throw std::invalid_argument("bad point '" + token + "', expected m:n:K");
    points.push_back(point);
  }
  return points;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

struct GenerateOptions {
  std::string model, out, center;
  int m = 0, n = 0, components = 5;
  std::uint64_t seed = 1;
  double urn_ratio = 0.05, phi = 0.5;
};

int run_generate(const GenerateOptions& options) {
  std::optional<std::vector<int>> center;
  if (!options.center.empty()) center = parse_int_list(options.center);
  PreferenceProfile profile =
      generate_profile(options.model, options.m, options.n, options.seed, options.urn_ratio,
                       options.phi, center, options.components);

  std::ostringstream meta;
  meta << "model=" << options.model << " m=" << options.m << " n=" << options.n
       << " seed=" << options.seed;
  if (options.model == "urn") meta << " ratio=" << options.urn_ratio;
  if (options.model == "mallows") meta << " phi=" << options.phi;
  if (options.model == "mixture") meta << " components=" << options.components;

  write_profile_file(profile, options.out, meta.str());
  std::cout << meta.str() << "\n";
  return 0;
}

struct SolveOptions {
  std::string profile_path, rule = "monroe", algorithm, psf = "borda", assignment_path;
  int k = 0, d = 15, samples = 100;
  std::uint64_t seed = 1;
  long long subset_limit = 2'000'000;
  bool with_exact = false;
};

int run_solve(const SolveOptions& options) {
  PreferenceProfile profile = read_profile_file(options.profile_path);
  Rule rule = rule_from_string(options.rule);
  Algorithm algorithm = algorithm_from_string(options.algorithm);
  ScoringFunction psf = options.psf == "borda"
                            ? ScoringFunction::borda(profile.alternative_count())
                            : read_psf_file(options.psf);
  if (psf.size() != profile.alternative_count())
    throw std::invalid_argument("psf length does not match the profile");

  SolveResult result = run_algorithm(algorithm, rule, profile, psf, options.k, options.d,
                                     options.samples, options.seed, options.subset_limit);

  ResultRecord record;
  record.algorithm = to_string(algorithm);
  record.rule = to_string(rule);
  record.psf = options.psf;
  record.m = profile.alternative_count();
  record.n = profile.agent_count();
  record.k = options.k;
  if (algorithm == Algorithm::kC) record.d = options.d;
  if (algorithm == Algorithm::kR) record.samples = options.samples;
  record.seed = options.seed;
  record.satisfaction = result.satisfaction;
  record.c_ideal = ideal_satisfaction(profile, psf);
  record.ratio_ideal = record.c_ideal == 0
                           ? 0.0
                           : static_cast<double>(result.satisfaction) / record.c_ideal;
  if (algorithm == Algorithm::kExact) {
    record.c_opt = result.satisfaction;
    record.ratio_opt = 1.0;
  } else if (options.with_exact) {
    SolveResult exact = exact_solver(profile, psf, options.k, rule,
                                     ExactConfig{options.subset_limit});
    record.c_opt = exact.satisfaction;
    record.ratio_opt = static_cast<double>(result.satisfaction) / exact.satisfaction;
  }
  record.time_ms = result.elapsed_ms;

  std::cout << write_results_csv({record});

  if (!options.assignment_path.empty()) {
    std::ostringstream dump;
    for (int i = 1; i <= profile.agent_count(); ++i)
      dump << i << " " << result.assignment.rep[i - 1] << "\n";
    write_text_file(options.assignment_path, dump.str());
  }
  return 0;
}

struct ExperimentOptions {
  std::string config_path, out, summary;
  int threads = -1;
};

int run_experiment_command(const ExperimentOptions& options) {
  ExperimentConfig config = parse_experiment_config_file(options.config_path);
  if (!options.out.empty()) config.out = options.out;
  if (!options.summary.empty()) config.summary_out = options.summary;
  if (options.threads >= 0) config.threads = options.threads;

  ExperimentOutput output = run_experiment(config);
  std::string csv = write_results_csv(output.records);
  if (config.out.empty()) {
    std::cout << csv;
    std::cerr << format_summary_table(output.summary);
  } else {
    write_text_file(config.out, csv);
    std::cout << format_summary_table(output.summary);
    std::cout << "results written to " << config.out << "\n";
  }
  if (!config.summary_out.empty())
    write_text_file(config.summary_out, write_summary_csv(output.summary));
  return 0;
}

struct BenchOptions {
  std::string points, algorithms, rule = "monroe", model = "ic", out;
  int reps = 3, d = 15, samples = 100;
  double urn_ratio = 0.05;
  std::uint64_t seed = 1;
};

int run_bench_command(const BenchOptions& options) {
  BenchConfig config;
  config.points = parse_points(options.points);
  config.model = options.model;
  config.urn_ratio = options.urn_ratio;
  config.reps = options.reps;
  config.seed = options.seed;
  config.beam_width = options.d;
  config.samples = options.samples;

  std::vector<Rule> rules;
  if (options.rule == "both") {
    rules = {Rule::kMonroe, Rule::kCC};
  } else {
    rules = {rule_from_string(options.rule)};
  }
  std::stringstream stream(options.algorithms);
  std::string token;
  std::vector<Algorithm> algorithms;
  while (std::getline(stream, token, ','))
    if (!token.empty()) algorithms.push_back(algorithm_from_string(token));
  for (Rule rule : rules)
    for (Algorithm algorithm : algorithms)
      if (algorithm_applies(algorithm, rule)) config.algorithms.emplace_back(algorithm, rule);
  if (config.algorithms.empty())
    throw std::invalid_argument("no algorithm applies to the selected rule(s)");

  std::string csv = write_bench_csv(run_bench(config));
  if (options.out.empty())
    std::cout << csv;
  else
    write_text_file(options.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monroe and Chamberlin-Courant committee selection"};
  app.require_subcommand(1);

  GenerateOptions generate;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic preference profile");
  gen_cmd->add_option("--model", generate.model, "ic|urn|mallows|mixture")->required();
  gen_cmd->add_option("--m", generate.m, "number of alternatives")->required();
  gen_cmd->add_option("--n", generate.n, "number of agents")->required();
  gen_cmd->add_option("--seed", generate.seed, "rng seed");
  gen_cmd->add_option("--out", generate.out, "output profile path")->required();
  gen_cmd->add_option("--urn-ratio", generate.urn_ratio, "urn reinforcement a/m!");
  gen_cmd->add_option("--phi", generate.phi, "mallows dispersion");
  gen_cmd->add_option("--center", generate.center, "mallows center, e.g. 3,1,2");
  gen_cmd->add_option("--components", generate.components, "mixture component count");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one profile with one algorithm");
  solve_cmd->add_option("--profile", solve.profile_path, "profile path")->required();
  solve_cmd->add_option("--rule", solve.rule, "monroe|cc")->required();
  solve_cmd->add_option("--alg", solve.algorithm, "a|b|c|gm|p|r|exact")->required();
  solve_cmd->add_option("--k", solve.k, "committee size")->required();
  solve_cmd->add_option("--d", solve.d, "beam width for algorithm c");
  solve_cmd->add_option("--samples", solve.samples, "sample count for algorithm r");
  solve_cmd->add_option("--psf", solve.psf, "borda or a psf file path");
  solve_cmd->add_option("--seed", solve.seed, "rng seed");
  solve_cmd->add_option("--assignment", solve.assignment_path, "write 'agent alternative' lines");
  solve_cmd->add_option("--subset-limit", solve.subset_limit, "exact enumeration limit");
  solve_cmd->add_flag("--with-exact", solve.with_exact, "also compute C_opt for the ratio");

  ExperimentOptions experiment;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a batched experiment from a config file");
  exp_cmd->add_option("config", experiment.config_path, "experiment config path")->required();
  exp_cmd->add_option("--out", experiment.out, "results csv path (overrides config)");
  exp_cmd->add_option("--summary", experiment.summary, "summary csv path (overrides config)");
  exp_cmd->add_option("--threads", experiment.threads, "worker threads (0 = all cores)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time algorithms over a grid of instances");
  bench_cmd->add_option("--points", bench.points, "comma list of m:n:K")->required();
  bench_cmd->add_option("--algs", bench.algorithms, "comma list of algorithms")->required();
  bench_cmd->add_option("--rule", bench.rule, "monroe|cc|both");
  bench_cmd->add_option("--model", bench.model, "data model");
  bench_cmd->add_option("--urn-ratio", bench.urn_ratio, "urn reinforcement a/m!");
  bench_cmd->add_option("--reps", bench.reps, "timed repetitions (median reported)");
  bench_cmd->add_option("--seed", bench.seed, "rng seed");
  bench_cmd->add_option("--d", bench.d, "beam width for algorithm c");
  bench_cmd->add_option("--samples", bench.samples, "sample count for algorithm r");
  bench_cmd->add_option("--out", bench.out, "timing csv path");

  try {
    app.parse(argc, argv);
    if (gen_cmd->parsed()) return run_generate(generate);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (exp_cmd->parsed()) return run_experiment_command(experiment);
    if (bench_cmd->parsed()) return run_bench_command(bench);
    return 1;
  } catch (const CLI::ParseError& error) {
    int code = app.exit(error);
    return code == 0 ? 0 : 1;
  } catch (const SizeLimitError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
