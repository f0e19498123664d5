#include "fpr/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <thread>

namespace fpr {

namespace {

using Clock = std::chrono::steady_clock;

bool next_combination(std::vector<int>& combo, int m) {
  const int k = static_cast<int>(combo.size());
  for (int i = k - 1; i >= 0; --i) {
    if (combo[i] < m - (k - 1 - i)) {
      ++combo[i];
      for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Lexicographic rank -> combination over values 1..m.
std::vector<int> unrank_combination(int m, int k, long long rank, long long total) {
  std::vector<int> combo;
  combo.reserve(k);
  int next = 1;
  for (int slot = 0; slot < k; ++slot) {
    for (int value = next;; ++value) {
      long long block = binomial_clamped(m - value, k - slot - 1, total);
      if (rank < block) {
        combo.push_back(value);
        next = value + 1;
        break;
      }
      rank -= block;
    }
  }
  return combo;
}

Satisfaction cc_subset_satisfaction(const PreferenceProfile& profile,
                                    const ScoringFunction& psf,
                                    const std::vector<int>& subset) {
  Satisfaction total = 0;
  for (int i = 1; i <= profile.agent_count(); ++i) {
    Satisfaction best = 0;
    for (int alt : subset) {
      Satisfaction value = psf.at(profile.position(i, alt));
      if (value > best) best = value;
    }
    total += best;
  }
  return total;
}

struct RangeBest {
  Satisfaction sat = -1;
  std::vector<int> subset;
};

RangeBest scan_range(const PreferenceProfile& profile, const ScoringFunction& psf,
                     int committee_size, Rule rule, std::vector<int> combo, long long count) {
  RangeBest best;
  const int m = profile.alternative_count();
  for (long long step = 0; step < count; ++step) {
    Satisfaction sat =
        rule == Rule::kCC
            ? cc_subset_satisfaction(profile, psf, combo)
            : satisfaction(profile, psf,
                           optimal_monroe_assignment(profile, psf, combo, committee_size));
    if (sat > best.sat) {
      best.sat = sat;
      best.subset = combo;
    }
    if (step + 1 < count) next_combination(combo, m);
  }
  return best;
}

}  // namespace

long long binomial_clamped(int m, int k, long long limit) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    __int128 next = static_cast<__int128>(result) * (m - k + i) / i;
    if (next > limit) return limit + 1;
    result = static_cast<long long>(next);
  }
  return result;
}

SolveResult exact_solver(const PreferenceProfile& profile, const ScoringFunction& psf,
                         int committee_size, Rule rule, const ExactConfig& config) {
  auto start = Clock::now();
  if (psf.size() != profile.alternative_count())
    throw std::invalid_argument("exact: psf length differs from m");
  const int m = profile.alternative_count();
  if (committee_size < 1 || committee_size > m)
    throw std::invalid_argument("exact: K out of range");
  if (config.subset_limit < 1) throw std::invalid_argument("exact: subset_limit must be >= 1");

  long long total = binomial_clamped(m, committee_size, config.subset_limit);
  if (total > config.subset_limit)
    throw SizeLimitError("exact solver: C(m,K) = " +
                         std::to_string(binomial_clamped(m, committee_size,
                                                         std::numeric_limits<long long>::max() / 2)) +
                         " subsets; raise subset_limit to at least that");

  int threads = std::max(1, config.threads);
  threads = static_cast<int>(std::min<long long>(threads, total));

  std::vector<RangeBest> bests(threads);
  if (threads == 1) {
    std::vector<int> first(committee_size);
    for (int i = 0; i < committee_size; ++i) first[i] = i + 1;
    bests[0] = scan_range(profile, psf, committee_size, rule, std::move(first), total);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      long long begin = total * w / threads;
      long long end = total * (w + 1) / threads;
      pool.emplace_back([&, w, begin, end]() {
        bests[w] = scan_range(profile, psf, committee_size, rule,
                              unrank_combination(m, committee_size, begin, total), end - begin);
      });
    }
    for (auto& worker : pool) worker.join();
  }

  // Merge keeps the lexicographically first committee among ties; ranges are
  // scanned in lexicographic order so per-range bests already are.
  RangeBest best;
  for (const auto& candidate : bests) {
    if (candidate.sat > best.sat) best = candidate;
  }

  SolveResult result;
  result.algorithm = Algorithm::kExact;
  result.rule = rule;
  result.assignment =
      rule == Rule::kCC
          ? optimal_cc_assignment(profile, psf, best.subset)
          : optimal_monroe_assignment(profile, psf, best.subset, committee_size);
  result.satisfaction = satisfaction(profile, psf, result.assignment);
  result.winners = result.assignment.winners;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

}  // namespace fpr
