#include "fpr/algorithms.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <map>

#include "fpr/rng.hpp"

namespace fpr {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void check_committee_size(const PreferenceProfile& profile, const ScoringFunction& psf,
                          int committee_size) {
  if (psf.size() != profile.alternative_count())
    throw std::invalid_argument("solve: psf length differs from m");
  if (committee_size < 1 || committee_size > profile.alternative_count())
    throw std::invalid_argument("solve: K out of range");
}

// Agents listed per alternative in (position, agent id) order; the shared
// scaffolding of the greedy Monroe family.
std::vector<std::vector<int>> agents_by_preference(const PreferenceProfile& profile) {
  const int m = profile.alternative_count();
  const int n = profile.agent_count();
  std::vector<std::vector<int>> by_alt(m);
  for (auto& list : by_alt) list.reserve(n);
  std::vector<std::vector<int>> buckets(m + 1);
  for (int a = 1; a <= m; ++a) {
    for (auto& bucket : buckets) bucket.clear();
    for (int i = 1; i <= n; ++i) buckets[profile.position(i, a)].push_back(i);
    for (int r = 1; r <= m; ++r)
      by_alt[a - 1].insert(by_alt[a - 1].end(), buckets[r].begin(), buckets[r].end());
  }
  return by_alt;
}

// Score of handing `alt` its `quota` best unassigned agents; the chosen
// agents land in `picked` when non-null.
Satisfaction top_quota_score(const PreferenceProfile& profile, const ScoringFunction& psf,
                             const std::vector<int>& agents_for_alt, int alt,
                             const std::vector<int>& rep, int quota,
                             std::vector<int>* picked) {
  Satisfaction score = 0;
  int taken = 0;
  for (int agent : agents_for_alt) {
    if (taken == quota) break;
    if (rep[agent - 1] != kNullAlternative) continue;
    score += psf.at(profile.position(agent, alt));
    if (picked) picked->push_back(agent);
    ++taken;
  }
  return score;
}

struct MonroeBeamEntry {
  std::vector<int> rep;
  std::vector<int> winner_set;  // sorted
  Satisfaction sat = 0;
};

// Shared implementation of Algorithms A and C (and B via C with d = 1 plus
// reoptimization): beam search over partial greedy assignments.
SolveResult greedy_monroe(const PreferenceProfile& profile, const ScoringFunction& psf,
                          int committee_size, int beam_width, bool reoptimize,
                          Algorithm label) {
  auto start = Clock::now();
  check_committee_size(profile, psf, committee_size);
  if (beam_width < 1) throw std::invalid_argument("solve: beam width must be >= 1");

  const int m = profile.alternative_count();
  const int n = profile.agent_count();
  auto by_alt = agents_by_preference(profile);

  std::vector<MonroeBeamEntry> beam(1);
  beam[0].rep.assign(n, kNullAlternative);

  int remaining = n;
  for (int round = 0; round < committee_size; ++round) {
    int quota = ceil_div(remaining, committee_size - round);

    struct Child {
      int parent;
      int alt;
      Satisfaction sat;
      std::vector<int> winner_set;
    };
    std::vector<Child> children;
    children.reserve(beam.size() * m);
    for (std::size_t p = 0; p < beam.size(); ++p) {
      const auto& entry = beam[p];
      for (int alt = 1; alt <= m; ++alt) {
        if (std::binary_search(entry.winner_set.begin(), entry.winner_set.end(), alt)) continue;
        Satisfaction score =
            top_quota_score(profile, psf, by_alt[alt - 1], alt, entry.rep, quota, nullptr);
        Child child{static_cast<int>(p), alt, entry.sat + score, entry.winner_set};
        child.winner_set.insert(
            std::lower_bound(child.winner_set.begin(), child.winner_set.end(), alt), alt);
        children.push_back(std::move(child));
      }
    }

    // Keep the best entry per distinct winner set, then the best d sets.
    std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.winner_set != b.winner_set) return a.winner_set < b.winner_set;
      return a.sat > b.sat;
    });
    children.erase(std::unique(children.begin(), children.end(),
                               [](const Child& a, const Child& b) {
                                 return a.winner_set == b.winner_set;
                               }),
                   children.end());
    std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.sat != b.sat) return a.sat > b.sat;
      return a.winner_set < b.winner_set;
    });
    if (static_cast<int>(children.size()) > beam_width) children.resize(beam_width);

    std::vector<MonroeBeamEntry> next;
    next.reserve(children.size());
    for (const auto& child : children) {
      MonroeBeamEntry entry;
      entry.rep = beam[child.parent].rep;
      entry.winner_set = child.winner_set;
      entry.sat = child.sat;
      std::vector<int> picked;
      picked.reserve(quota);
      top_quota_score(profile, psf, by_alt[child.alt - 1], child.alt,
                      beam[child.parent].rep, quota, &picked);
      for (int agent : picked) entry.rep[agent - 1] = child.alt;
      next.push_back(std::move(entry));
    }
    beam = std::move(next);
    remaining -= quota;
  }

  SolveResult result;
  result.algorithm = label;
  result.rule = Rule::kMonroe;
  if (reoptimize) {
    bool have_best = false;
    Assignment best;
    Satisfaction best_sat = 0;
    const std::vector<int>* best_set = nullptr;
    for (const auto& entry : beam) {
      Assignment candidate =
          optimal_monroe_assignment(profile, psf, entry.winner_set, committee_size);
      Satisfaction sat = satisfaction(profile, psf, candidate);
      if (!have_best || sat > best_sat ||
          (sat == best_sat && entry.winner_set < *best_set)) {
        have_best = true;
        best = std::move(candidate);
        best_sat = sat;
        best_set = &entry.winner_set;
      }
    }
    result.assignment = std::move(best);
    result.satisfaction = best_sat;
  } else {
    result.assignment = Assignment(Rule::kMonroe, committee_size, std::move(beam[0].rep));
    result.satisfaction = satisfaction(profile, psf, result.assignment);
  }
  result.winners = result.assignment.winners;
  result.elapsed_ms = elapsed_ms_since(start);
  return result;
}

}  // namespace

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kA: return "a";
    case Algorithm::kB: return "b";
    case Algorithm::kC: return "c";
    case Algorithm::kGM: return "gm";
    case Algorithm::kP: return "p";
    case Algorithm::kR: return "r";
    case Algorithm::kExact: return "exact";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "a") return Algorithm::kA;
  if (name == "b") return Algorithm::kB;
  if (name == "c") return Algorithm::kC;
  if (name == "gm") return Algorithm::kGM;
  if (name == "p") return Algorithm::kP;
  if (name == "r") return Algorithm::kR;
  if (name == "exact") return Algorithm::kExact;
  throw std::invalid_argument("unknown algorithm: " + name);
}

bool algorithm_applies(Algorithm algorithm, Rule rule) {
  switch (algorithm) {
    case Algorithm::kA:
    case Algorithm::kB:
      return rule == Rule::kMonroe;
    case Algorithm::kP:
      return rule == Rule::kCC;
    default:
      return true;
  }
}

SolveResult algorithm_a(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size) {
  return greedy_monroe(profile, psf, committee_size, 1, false, Algorithm::kA);
}

SolveResult algorithm_b(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size) {
  return greedy_monroe(profile, psf, committee_size, 1, true, Algorithm::kB);
}

SolveResult algorithm_c_monroe(const PreferenceProfile& profile, const ScoringFunction& psf,
                               int committee_size, int beam_width) {
  SolveResult result =
      greedy_monroe(profile, psf, committee_size, beam_width, true, Algorithm::kC);
  result.notes = "beam dedup by winner set";
  return result;
}

SolveResult algorithm_gm(const PreferenceProfile& profile, const ScoringFunction& psf,
                         int committee_size, Rule rule) {
  auto start = Clock::now();
  check_committee_size(profile, psf, committee_size);
  const int m = profile.alternative_count();
  const int n = profile.agent_count();

  std::vector<int> chosen;
  SolveResult result;
  result.algorithm = Algorithm::kGM;
  result.rule = rule;

  if (rule == Rule::kCC) {
    std::vector<Satisfaction> best_alpha(n, 0);
    for (int round = 0; round < committee_size; ++round) {
      int best_alt = -1;
      Satisfaction best_gain = -1;
      for (int alt = 1; alt <= m; ++alt) {
        if (std::find(chosen.begin(), chosen.end(), alt) != chosen.end()) continue;
        Satisfaction gain = 0;
        for (int i = 1; i <= n; ++i) {
          Satisfaction value = psf.at(profile.position(i, alt));
          if (value > best_alpha[i - 1]) gain += value - best_alpha[i - 1];
        }
        if (gain > best_gain) {
          best_gain = gain;
          best_alt = alt;
        }
      }
      chosen.push_back(best_alt);
      for (int i = 1; i <= n; ++i) {
        Satisfaction value = psf.at(profile.position(i, best_alt));
        if (value > best_alpha[i - 1]) best_alpha[i - 1] = value;
      }
    }
    result.assignment = optimal_cc_assignment(profile, psf, chosen);
  } else {
    int ceil_load = ceil_div(n, committee_size);
    for (int round = 0; round < committee_size; ++round) {
      int best_alt = -1;
      Satisfaction best_sat = -1;
      for (int alt = 1; alt <= m; ++alt) {
        if (std::find(chosen.begin(), chosen.end(), alt) != chosen.end()) continue;
        std::vector<int> trial = chosen;
        trial.push_back(alt);
        CapacityFunction caps =
            CapacityFunction::uniform(m, trial, ceil_load, false);
        Satisfaction sat = satisfaction(
            profile, psf, optimal_capacitated_assignment(profile, psf, caps, committee_size));
        if (sat > best_sat) {
          best_sat = sat;
          best_alt = alt;
        }
      }
      chosen.push_back(best_alt);
    }
    std::sort(chosen.begin(), chosen.end());
    result.assignment = optimal_monroe_assignment(profile, psf, chosen, committee_size);
  }

  result.satisfaction = satisfaction(profile, psf, result.assignment);
  result.winners = result.assignment.winners;
  result.elapsed_ms = elapsed_ms_since(start);
  return result;
}

SolveResult algorithm_c_cc(const PreferenceProfile& profile, const ScoringFunction& psf,
                           int committee_size, int beam_width) {
  auto start = Clock::now();
  check_committee_size(profile, psf, committee_size);
  if (beam_width < 1) throw std::invalid_argument("solve: beam width must be >= 1");
  const int m = profile.alternative_count();
  const int n = profile.agent_count();

  struct Entry {
    std::vector<int> winner_set;  // sorted
    std::vector<Satisfaction> best_alpha;
    Satisfaction sat = 0;
  };
  std::vector<Entry> beam(1);
  beam[0].best_alpha.assign(n, 0);

  for (int round = 0; round < committee_size; ++round) {
    struct Child {
      int parent;
      int alt;
      Satisfaction sat;
      std::vector<int> winner_set;
    };
    std::vector<Child> children;
    children.reserve(beam.size() * m);
    for (std::size_t p = 0; p < beam.size(); ++p) {
      const auto& entry = beam[p];
      for (int alt = 1; alt <= m; ++alt) {
        if (std::binary_search(entry.winner_set.begin(), entry.winner_set.end(), alt)) continue;
        Satisfaction gain = 0;
        for (int i = 1; i <= n; ++i) {
          Satisfaction value = psf.at(profile.position(i, alt));
          if (value > entry.best_alpha[i - 1]) gain += value - entry.best_alpha[i - 1];
        }
        Child child{static_cast<int>(p), alt, entry.sat + gain, entry.winner_set};
        child.winner_set.insert(
            std::lower_bound(child.winner_set.begin(), child.winner_set.end(), alt), alt);
        children.push_back(std::move(child));
      }
    }

    std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.winner_set != b.winner_set) return a.winner_set < b.winner_set;
      return a.sat > b.sat;
    });
    children.erase(std::unique(children.begin(), children.end(),
                               [](const Child& a, const Child& b) {
                                 return a.winner_set == b.winner_set;
                               }),
                   children.end());
    std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.sat != b.sat) return a.sat > b.sat;
      return a.winner_set < b.winner_set;
    });
    if (static_cast<int>(children.size()) > beam_width) children.resize(beam_width);

    std::vector<Entry> next;
    next.reserve(children.size());
    for (const auto& child : children) {
      Entry entry;
      entry.winner_set = child.winner_set;
      entry.sat = child.sat;
      entry.best_alpha = beam[child.parent].best_alpha;
      for (int i = 1; i <= n; ++i) {
        Satisfaction value = psf.at(profile.position(i, child.alt));
        if (value > entry.best_alpha[i - 1]) entry.best_alpha[i - 1] = value;
      }
      next.push_back(std::move(entry));
    }
    beam = std::move(next);
  }

  SolveResult result;
  result.algorithm = Algorithm::kC;
  result.rule = Rule::kCC;
  result.assignment = optimal_cc_assignment(profile, psf, beam[0].winner_set);
  result.satisfaction = satisfaction(profile, psf, result.assignment);
  assert(result.satisfaction == beam[0].sat);
  result.winners = result.assignment.winners;
  result.elapsed_ms = elapsed_ms_since(start);
  return result;
}

SolveResult algorithm_p(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size) {
  auto start = Clock::now();
  check_committee_size(profile, psf, committee_size);
  const int m = profile.alternative_count();
  const int n = profile.agent_count();

  int window = static_cast<int>(
      std::ceil(static_cast<double>(m) * lambert_w(committee_size) / committee_size));
  window = std::clamp(window, 1, m);

  // Greedy cover: each round takes the alternative reaching the most
  // still-uncovered agents within the position window.
  std::vector<char> covered(n, 0);
  std::vector<char> used(m + 1, 0);
  std::vector<int> chosen;
  chosen.reserve(committee_size);
  for (int round = 0; round < committee_size; ++round) {
    int best_alt = -1;
    int best_cover = -1;
    for (int alt = 1; alt <= m; ++alt) {
      if (used[alt]) continue;
      int cover = 0;
      for (int i = 1; i <= n; ++i)
        if (!covered[i - 1] && profile.position(i, alt) <= window) ++cover;
      if (cover > best_cover) {
        best_cover = cover;
        best_alt = alt;
      }
    }
    used[best_alt] = 1;
    chosen.push_back(best_alt);
    for (int i = 1; i <= n; ++i)
      if (!covered[i - 1] && profile.position(i, best_alt) <= window) covered[i - 1] = 1;
  }

  SolveResult result;
  result.algorithm = Algorithm::kP;
  result.rule = Rule::kCC;
  // The chosen committee is the output; its satisfaction is the rule's
  // optimal matching, which can only improve on the raw cover assignment.
  result.assignment = optimal_cc_assignment(profile, psf, chosen);
  result.satisfaction = satisfaction(profile, psf, result.assignment);
  result.winners = result.assignment.winners;
  if (!psf.is_borda()) result.notes = "non-borda psf: quality bound not applicable";
  result.elapsed_ms = elapsed_ms_since(start);
  return result;
}

SolveResult algorithm_r(const PreferenceProfile& profile, const ScoringFunction& psf,
                        int committee_size, Rule rule, const SamplingPlan& plan,
                        std::uint64_t seed) {
  auto start = Clock::now();
  check_committee_size(profile, psf, committee_size);
  if (plan.samples < 1) throw std::invalid_argument("solve: samples must be >= 1");
  const int m = profile.alternative_count();

  Rng rng(seed);
  std::vector<int> pool(m);
  bool have_best = false;
  Assignment best;
  Satisfaction best_sat = 0;
  for (int sample = 0; sample < plan.samples; ++sample) {
    for (int a = 0; a < m; ++a) pool[a] = a + 1;
    for (int j = 0; j < committee_size; ++j) {
      int r = j + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m - j)));
      std::swap(pool[j], pool[r]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + committee_size);
    std::sort(subset.begin(), subset.end());
    Assignment candidate =
        rule == Rule::kCC
            ? optimal_cc_assignment(profile, psf, subset)
            : optimal_monroe_assignment(profile, psf, subset, committee_size);
    Satisfaction sat = satisfaction(profile, psf, candidate);
    if (!have_best || sat > best_sat) {
      have_best = true;
      best = std::move(candidate);
      best_sat = sat;
    }
  }

  SolveResult result;
  result.algorithm = Algorithm::kR;
  result.rule = rule;
  result.assignment = std::move(best);
  result.satisfaction = best_sat;
  result.winners = result.assignment.winners;
  result.elapsed_ms = elapsed_ms_since(start);
  return result;
}

double lambert_w(double x) {
  if (x < 0) throw std::invalid_argument("lambert_w: negative argument unsupported");
  if (x == 0) return 0.0;
  double w = std::log1p(x);
  for (int iter = 0; iter < 64; ++iter) {
    double ew = std::exp(w);
    double f = w * ew - x;
    if (std::abs(f) <= 1e-12 * std::max(1.0, x)) break;
    double fp = ew * (1.0 + w);
    double fpp = ew * (2.0 + w);
    // Halley step.
    w -= f / (fp - f * fpp / (2.0 * fp));
  }
  return w;
}

long long sample_count(double lambda, double epsilon, int committee_size) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("sample_count: lambda must be in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("sample_count: epsilon must be in (0,1)");
  if (committee_size < 1) throw std::invalid_argument("sample_count: K must be >= 1");
  double count = 512.0 * std::log2(1.0 / (1.0 - lambda)) /
                 (static_cast<double>(committee_size) * epsilon * epsilon);
  return std::max<long long>(1, static_cast<long long>(std::ceil(count)));
}

double theoretical_bound(Algorithm algorithm, Rule rule, int m, int committee_size) {
  if (m < 1 || committee_size < 1 || committee_size > m)
    throw std::invalid_argument("theoretical_bound: bad m or K");
  const double k = committee_size;
  const double md = m;

  auto borda_greedy_bound = [&]() {
    double harmonic = 0.0;
    for (int i = 1; i <= committee_size; ++i) harmonic += 1.0 / i;
    double spread = committee_size == 1 ? 0.0 : (k - 1.0) / (2.0 * (md - 1.0));
    return 1.0 - spread - harmonic / k;
  };

  double value;
  if (rule == Rule::kMonroe) {
    switch (algorithm) {
      case Algorithm::kA:
      case Algorithm::kB:
      case Algorithm::kC:
      case Algorithm::kGM:
        value = borda_greedy_bound();
        break;
      case Algorithm::kR:
        value = m == 1 ? 1.0
                       : 0.5 * (1.0 + k / md -
                                (k * k * md - k * k * k) / (md * md * md - md * md));
        break;
      default:
        throw std::invalid_argument("theoretical_bound: no bound for this pair");
    }
  } else {
    switch (algorithm) {
      case Algorithm::kGM:
      case Algorithm::kC:
        value = 1.0 - 1.0 / std::exp(1.0);
        break;
      case Algorithm::kP:
        value = 1.0 - 2.0 * lambert_w(k) / k;
        break;
      case Algorithm::kR:
        value = (1.0 - 1.0 / (k + 1.0)) * (1.0 + 1.0 / md);
        break;
      default:
        throw std::invalid_argument("theoretical_bound: no bound for this pair");
    }
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace fpr
