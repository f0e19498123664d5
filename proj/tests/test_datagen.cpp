#include "fpr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "fpr/rng.hpp"

using namespace fpr;

namespace {

std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return all;
}

std::map<std::vector<int>, int> order_counts(const PreferenceProfile& profile) {
  std::map<std::vector<int>, int> counts;
  for (int i = 1; i <= profile.agent_count(); ++i) ++counts[profile.ranking(i)];
  return counts;
}

// Pearson statistic against the given expected distribution.
double chi_square(const std::map<std::vector<int>, int>& counts,
                  const std::map<std::vector<int>, double>& expected, int n) {
  double stat = 0.0;
  for (const auto& [order, probability] : expected) {
    double want = probability * n;
    auto it = counts.find(order);
    double got = it == counts.end() ? 0.0 : it->second;
    stat += (got - want) * (got - want) / want;
  }
  return stat;
}

// 0.999 quantile of chi-square with 5 degrees of freedom.
constexpr double kChi5At999 = 20.515;

}  // namespace

TEST_SUITE_BEGIN("datagen");

TEST_CASE("kendall tau examples") {
  CHECK(kendall_tau({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK(kendall_tau({1, 2, 3}, {3, 2, 1}) == 3);
  CHECK(kendall_tau({1, 2, 3}, {2, 1, 3}) == 1);
  CHECK_THROWS_AS(kendall_tau({1, 2}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(kendall_tau({1, 1, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("kendall tau is a metric (exhaustive m <= 4)") {
  for (int m = 2; m <= 4; ++m) {
    auto perms = all_permutations(m);
    int max_distance = m * (m - 1) / 2;
    for (const auto& a : perms)
      for (const auto& b : perms) {
        int d = kendall_tau(a, b);
        CHECK(d >= 0);
        CHECK(d <= max_distance);
        CHECK(d == kendall_tau(b, a));
        CHECK((d == 0) == (a == b));
      }
    for (const auto& a : perms)
      for (const auto& b : perms)
        for (const auto& c : perms)
          CHECK(kendall_tau(a, c) <= kendall_tau(a, b) + kendall_tau(b, c));
  }
}

TEST_CASE("impartial culture") {
  SUBCASE("m = 1") {
    PreferenceProfile profile = gen_impartial_culture(1, 5, 3);
    for (int i = 1; i <= 5; ++i) CHECK(profile.ranking(i) == std::vector<int>{1});
  }
  SUBCASE("uniform over the six orders of m = 3") {
    PreferenceProfile profile = gen_impartial_culture(3, 60000, 11);
    auto counts = order_counts(profile);
    CHECK(counts.size() == 6);
    for (const auto& [order, count] : counts)
      CHECK(std::abs(count / 60000.0 - 1.0 / 6.0) <= 0.01);

    std::map<std::vector<int>, double> uniform;
    for (const auto& order : all_permutations(3)) uniform[order] = 1.0 / 6.0;
    CHECK(chi_square(counts, uniform, 60000) < kChi5At999);
  }
  SUBCASE("deterministic per seed") {
    CHECK(gen_impartial_culture(5, 40, 7) == gen_impartial_culture(5, 40, 7));
    CHECK(gen_impartial_culture(5, 40, 7) != gen_impartial_culture(5, 40, 8));
  }
}

TEST_CASE("urn model") {
  SUBCASE("ratio zero reduces to impartial culture") {
    CHECK(gen_urn(4, 50, 13, UrnParams{0.0}) == gen_impartial_culture(4, 50, 13));
  }
  SUBCASE("first vote matches the fresh draw") {
    PreferenceProfile urn = gen_urn(5, 1, 21, UrnParams{0.5});
    PreferenceProfile ic = gen_impartial_culture(5, 1, 21);
    CHECK(urn.ranking(1) == ic.ranking(1));
  }
  SUBCASE("huge reinforcement collapses to copies") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
      PreferenceProfile profile = gen_urn(4, 50, seed, UrnParams{1e9});
      for (int i = 2; i <= 50; ++i) CHECK(profile.ranking(i) == profile.ranking(1));
    }
  }
  SUBCASE("negative ratio rejected") {
    CHECK_THROWS_AS(gen_urn(3, 3, 1, UrnParams{-0.1}), std::invalid_argument);
  }
  SUBCASE("second-vote copy probability matches the urn arithmetic") {
    // P(v2 == v1) = r/(1+r) + (1/(1+r)) / m!  for reinforcement ratio r.
    const double ratio = 0.4;
    const double expected = ratio / (1 + ratio) + (1 / (1 + ratio)) / 6.0;
    int equal = 0;
    const int profiles = 100000;
    for (int i = 0; i < profiles; ++i) {
      PreferenceProfile two = gen_urn(3, 2, 1000 + i, UrnParams{ratio});
      if (two.ranking(1) == two.ranking(2)) ++equal;
    }
    CHECK(std::abs(equal / static_cast<double>(profiles) - expected) < 0.005);
  }
}

TEST_CASE("mallows model") {
  SUBCASE("phi = 0 is a point mass on the center") {
    std::vector<int> center = {3, 1, 4, 2};
    PreferenceProfile profile = gen_mallows(4, 30, center, 0.0, 5);
    for (int i = 1; i <= 30; ++i) CHECK(profile.ranking(i) == center);
  }
  SUBCASE("phi = 0.5 matches the explicit six-order distribution") {
    std::vector<int> center = {1, 2, 3};
    PreferenceProfile profile = gen_mallows(3, 100000, center, 0.5, 17);
    auto counts = order_counts(profile);
    double z = 0.0;
    std::map<std::vector<int>, double> expected;
    for (const auto& order : all_permutations(3)) {
      expected[order] = std::pow(0.5, kendall_tau(center, order));
      z += expected[order];
    }
    for (auto& [order, weight] : expected) weight /= z;
    for (const auto& [order, probability] : expected) {
      auto it = counts.find(order);
      double frequency = it == counts.end() ? 0.0 : it->second / 100000.0;
      CHECK(std::abs(frequency - probability) <= 0.01);
    }
  }
  SUBCASE("phi = 1 is uniform (chi-square at significance 0.001)") {
    PreferenceProfile profile = gen_mallows(3, 60000, {1, 2, 3}, 1.0, 23);
    std::map<std::vector<int>, double> uniform;
    for (const auto& order : all_permutations(3)) uniform[order] = 1.0 / 6.0;
    CHECK(chi_square(order_counts(profile), uniform, 60000) < kChi5At999);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(gen_mallows(3, 3, {1, 2, 3}, 1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_mallows(3, 3, {1, 2}, 0.5, 1), std::invalid_argument);
  }
}

TEST_CASE("mallows mixture") {
  SUBCASE("single component equals the plain model") {
    MixtureParams params;
    params.lambdas = {1.0};
    params.phis = {0.4};
    params.centers = {{2, 3, 1, 4}};
    CHECK(gen_mallows_mixture(4, 40, 9, params) == gen_mallows(4, 40, {2, 3, 1, 4}, 0.4, 9));
  }
  SUBCASE("zero-weight components never fire") {
    MixtureParams params;
    params.lambdas = {1.0, 0.0};
    params.phis = {0.0, 0.0};
    params.centers = {{1, 2, 3}, {3, 2, 1}};
    PreferenceProfile profile = gen_mallows_mixture(3, 40, 4, params);
    for (int i = 1; i <= 40; ++i) CHECK(profile.ranking(i) == std::vector<int>{1, 2, 3});
  }
  SUBCASE("two sharp components split roughly evenly") {
    MixtureParams params;
    params.lambdas = {0.5, 0.5};
    params.phis = {0.0, 0.0};
    params.centers = {{1, 2, 3}, {3, 2, 1}};
    PreferenceProfile profile = gen_mallows_mixture(3, 20000, 6, params);
    auto counts = order_counts(profile);
    CHECK(counts.size() == 2);
    CHECK(std::abs(counts[{1, 2, 3}] / 20000.0 - 0.5) <= 0.02);
  }
  SUBCASE("random parameters are reproducible and valid") {
    MixtureParams params = random_mixture_params(6, 5, 99);
    CHECK(params.components() == 5);
    double total = 0.0;
    for (double weight : params.lambdas) total += weight;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(gen_mallows_mixture(6, 25, 99) == gen_mallows_mixture(6, 25, 99));
  }
  SUBCASE("invalid parameters rejected") {
    MixtureParams params;
    params.lambdas = {0.6, 0.6};
    params.phis = {0.1, 0.1};
    params.centers = {{1, 2}, {2, 1}};
    CHECK_THROWS_AS(gen_mallows_mixture(2, 5, 1, params), std::invalid_argument);
  }
}

TEST_SUITE_END();
