#include "fpr/algorithms.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fpr/exact.hpp"
#include "fpr/rng.hpp"
#include "test_util.hpp"

using namespace fpr;

namespace {

PreferenceProfile four_agent_profile() {
  return PreferenceProfile(3, {{1, 2, 3}, {1, 2, 3}, {1, 3, 2}, {1, 3, 2}});
}

// Bisection on w * e^w = x, independent of the production implementation.
double lambert_w_bisect(double x) {
  double lo = 0.0, hi = std::max(1.0, std::log(x + 1.0) + 1.0);
  while (hi * std::exp(hi) < x) hi *= 2;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < x)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE_BEGIN("algorithms");

TEST_CASE("algorithm a") {
  SUBCASE("worked four-agent trace") {
    PreferenceProfile profile = four_agent_profile();
    SolveResult result = algorithm_a(profile, ScoringFunction::borda(3), 2);
    CHECK(result.winners == std::vector<int>{1, 3});
    CHECK(result.satisfaction == 6);
    CHECK(result.assignment.rep == std::vector<int>{1, 1, 3, 3});
    CHECK(validate_monroe(result.assignment, 4, 2).ok);
  }
  SUBCASE("identical rankings elect the shared top K") {
    std::vector<std::vector<int>> rankings(10, {4, 2, 5, 1, 3});
    PreferenceProfile profile(5, rankings);
    SolveResult result = algorithm_a(profile, ScoringFunction::borda(5), 3);
    CHECK(result.winners == std::vector<int>{2, 4, 5});
  }
  SUBCASE("K = m = 1") {
    PreferenceProfile profile(1, {{1}, {1}, {1}});
    SolveResult result = algorithm_a(profile, ScoringFunction::borda(1), 1);
    CHECK(result.winners == std::vector<int>{1});
    CHECK(result.satisfaction == 0);
  }
  SUBCASE("argument errors") {
    PreferenceProfile profile = four_agent_profile();
    CHECK_THROWS_AS(algorithm_a(profile, ScoringFunction::borda(3), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(algorithm_a(profile, ScoringFunction::borda(3), 4),
                    std::invalid_argument);
  }
}

TEST_CASE("algorithm b reuses a's winners and improves the matching") {
  SUBCASE("already optimal on the worked instance") {
    PreferenceProfile profile = four_agent_profile();
    SolveResult a = algorithm_a(profile, ScoringFunction::borda(3), 2);
    SolveResult b = algorithm_b(profile, ScoringFunction::borda(3), 2);
    CHECK(b.winners == a.winners);
    CHECK(b.satisfaction == 6);
  }
  SUBCASE("strict improvement exists at m=6, n=9, K=3") {
    ScoringFunction psf = ScoringFunction::borda(6);
    bool improved = false;
    for (std::uint64_t seed = 1; seed <= 200 && !improved; ++seed) {
      PreferenceProfile profile = test::random_profile(6, 9, seed);
      SolveResult a = algorithm_a(profile, psf, 3);
      SolveResult b = algorithm_b(profile, psf, 3);
      CHECK(b.winners == a.winners);
      CHECK(b.satisfaction >= a.satisfaction);
      if (b.satisfaction > a.satisfaction) improved = true;
    }
    CHECK(improved);
  }
}

TEST_CASE("chain dominance and beam monotonicity") {
  Rng rng(909);
  for (int round = 0; round < 25; ++round) {
    int m = 3 + static_cast<int>(rng.next_below(5));
    int n = 2 + static_cast<int>(rng.next_below(10));
    int k = 1 + static_cast<int>(rng.next_below(std::min(m, n)));
    PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
    ScoringFunction psf = test::random_psf(m, rng);

    SolveResult a = algorithm_a(profile, psf, k);
    SolveResult b = algorithm_b(profile, psf, k);
    CHECK(b.satisfaction >= a.satisfaction);

    Satisfaction last = b.satisfaction;
    for (int d : {1, 2, 4, 8}) {
      SolveResult c = algorithm_c_monroe(profile, psf, k, d);
      CHECK(c.satisfaction >= b.satisfaction);
      if (d == 1) CHECK(c.satisfaction == b.satisfaction);
      CHECK(c.satisfaction >= last);
      last = c.satisfaction;
      CHECK(validate_monroe(c.assignment, n, k).ok);
    }
  }
}

TEST_CASE("beam search with a huge beam matches the exact optimum") {
  Rng rng(4242);
  for (int round = 0; round < 10; ++round) {
    int m = 6;
    int n = 8;
    int k = 2;
    PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
    ScoringFunction psf = ScoringFunction::borda(m);
    int all_subsets = 15;  // C(6,2)
    SolveResult beam = algorithm_c_monroe(profile, psf, k, all_subsets);
    SolveResult best = exact_solver(profile, psf, k, Rule::kMonroe);
    CHECK(beam.satisfaction == best.satisfaction);

    SolveResult beam_cc = algorithm_c_cc(profile, psf, k, all_subsets);
    SolveResult best_cc = exact_solver(profile, psf, k, Rule::kCC);
    CHECK(beam_cc.satisfaction == best_cc.satisfaction);
  }
}

TEST_CASE("algorithm gm") {
  SUBCASE("K=1 under CC picks the single-winner PSF choice") {
    Rng rng(11);
    for (int round = 0; round < 10; ++round) {
      int m = 3 + static_cast<int>(rng.next_below(5));
      int n = 2 + static_cast<int>(rng.next_below(10));
      PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
      ScoringFunction psf = test::random_psf(m, rng);
      SolveResult gm = algorithm_gm(profile, psf, 1, Rule::kCC);
      Satisfaction best = -1;
      int best_alt = -1;
      for (int alt = 1; alt <= m; ++alt) {
        Satisfaction total = 0;
        for (int i = 1; i <= n; ++i) total += psf.at(profile.position(i, alt));
        if (total > best) {
          best = total;
          best_alt = alt;
        }
      }
      CHECK(gm.winners == std::vector<int>{best_alt});
      CHECK(gm.satisfaction == best);
    }
  }
  SUBCASE("guarantee holds against the exact optimum") {
    Rng rng(303);
    constexpr double kBound = 1.0 - 1.0 / 2.718281828459045;
    for (int round = 0; round < 40; ++round) {
      int m = 3 + static_cast<int>(rng.next_below(6));  // up to 8
      int n = 2 + static_cast<int>(rng.next_below(11));  // up to 12
      int k = 1 + static_cast<int>(rng.next_below(std::min({m, n, 4})));
      PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
      ScoringFunction psf = test::random_psf(m, rng);
      for (Rule rule : {Rule::kMonroe, Rule::kCC}) {
        SolveResult gm = algorithm_gm(profile, psf, k, rule);
        SolveResult best = exact_solver(profile, psf, k, rule);
        CHECK(static_cast<double>(gm.satisfaction) >=
              kBound * static_cast<double>(best.satisfaction));
        if (rule == Rule::kMonroe) CHECK(validate_monroe(gm.assignment, n, k).ok);
      }
    }
  }
}

TEST_CASE("algorithm c for cc degenerates to gm at d=1") {
  Rng rng(606);
  for (int round = 0; round < 20; ++round) {
    int m = 3 + static_cast<int>(rng.next_below(6));
    int n = 2 + static_cast<int>(rng.next_below(10));
    int k = 1 + static_cast<int>(rng.next_below(m));
    PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
    ScoringFunction psf = test::random_psf(m, rng);
    SolveResult beam = algorithm_c_cc(profile, psf, k, 1);
    SolveResult gm = algorithm_gm(profile, psf, k, Rule::kCC);
    CHECK(beam.satisfaction == gm.satisfaction);
    CHECK(beam.winners == gm.winners);
    CHECK(beam.assignment.complete());
  }
}

TEST_CASE("algorithm p") {
  SUBCASE("position window from the Lambert W threshold") {
    // ceil(10 * W(3) / 3) = ceil(3.4997) = 4 covered positions.
    CHECK(static_cast<int>(std::ceil(10.0 * lambert_w(3.0) / 3.0)) == 4);
  }
  SUBCASE("unanimous top choice with K=1") {
    std::vector<std::vector<int>> rankings;
    Rng rng(8);
    for (int i = 0; i < 10; ++i) {
      std::vector<int> rest = {2, 3, 4, 5};
      rng.shuffle(rest);
      std::vector<int> ranking = {1};
      ranking.insert(ranking.end(), rest.begin(), rest.end());
      rankings.push_back(ranking);
    }
    PreferenceProfile profile(5, rankings);
    SolveResult result = algorithm_p(profile, ScoringFunction::borda(5), 1);
    CHECK(result.winners == std::vector<int>{1});
    CHECK(result.satisfaction == 10 * 4);
  }
  SUBCASE("non-borda use is flagged") {
    PreferenceProfile profile = test::random_profile(6, 9, 77);
    SolveResult result = algorithm_p(profile, ScoringFunction({3, 3, 3, 2, 1, 0}), 2);
    CHECK(result.notes.find("non-borda") != std::string::npos);
    CHECK(algorithm_p(profile, ScoringFunction::borda(6), 2).notes.empty());
  }
}

TEST_CASE("borda bound safety") {
  Rng rng(12121);
  for (int round = 0; round < 60; ++round) {
    int m = 2 + static_cast<int>(rng.next_below(8));
    int n = 1 + static_cast<int>(rng.next_below(16));
    int k = 1 + static_cast<int>(rng.next_below(std::min(m, n)));
    PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
    ScoringFunction psf = ScoringFunction::borda(m);
    double perfect = static_cast<double>(n) * (m - 1);

    double greedy_bound = theoretical_bound(Algorithm::kA, Rule::kMonroe, m, k) * perfect;
    CHECK(static_cast<double>(algorithm_a(profile, psf, k).satisfaction) >= greedy_bound);
    CHECK(static_cast<double>(algorithm_b(profile, psf, k).satisfaction) >= greedy_bound);
    CHECK(static_cast<double>(algorithm_c_monroe(profile, psf, k, 5).satisfaction) >=
          greedy_bound);

    double cover_bound = theoretical_bound(Algorithm::kP, Rule::kCC, m, k) * perfect;
    CHECK(static_cast<double>(algorithm_p(profile, psf, k).satisfaction) >= cover_bound);
  }
}

TEST_CASE("algorithm r") {
  SUBCASE("K = m always evaluates the full set") {
    PreferenceProfile profile = test::random_profile(4, 6, 5);
    ScoringFunction psf = ScoringFunction::borda(4);
    SolveResult result = algorithm_r(profile, psf, 4, Rule::kCC, SamplingPlan{3}, 9);
    CHECK(result.satisfaction == ideal_satisfaction(profile, psf));
    CHECK(result.assignment.rep ==
          optimal_cc_assignment(profile, psf, {1, 2, 3, 4}).rep);
  }
  SUBCASE("never beats the exact optimum, reaches it with enough samples") {
    Rng rng(14);
    bool reached = false;
    for (int round = 0; round < 10; ++round) {
      PreferenceProfile profile = test::random_profile(5, 6, rng.next_u64());
      ScoringFunction psf = ScoringFunction::borda(5);
      SolveResult best = exact_solver(profile, psf, 2, Rule::kMonroe);
      SolveResult sampled =
          algorithm_r(profile, psf, 2, Rule::kMonroe, SamplingPlan{60}, rng.next_u64());
      CHECK(sampled.satisfaction <= best.satisfaction);
      if (sampled.satisfaction == best.satisfaction) reached = true;
    }
    CHECK(reached);  // 60 samples of C(5,2)=10 subsets all but surely hit the optimum
  }
  SUBCASE("deterministic per seed") {
    PreferenceProfile profile = test::random_profile(6, 10, 3);
    ScoringFunction psf = ScoringFunction::borda(6);
    SolveResult first = algorithm_r(profile, psf, 2, Rule::kMonroe, SamplingPlan{10}, 42);
    SolveResult second = algorithm_r(profile, psf, 2, Rule::kMonroe, SamplingPlan{10}, 42);
    CHECK(first.winners == second.winners);
    CHECK(first.satisfaction == second.satisfaction);
    CHECK(first.assignment.rep == second.assignment.rep);
  }
}

TEST_CASE("lambert w") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(std::abs(lambert_w(std::exp(1.0)) - 1.0) <= 1e-9);
  CHECK(std::abs(lambert_w(1.0) - 0.567143290) <= 1e-9);
  CHECK_THROWS_AS(lambert_w(-0.1), std::invalid_argument);
  for (double x : {0.05, 0.5, 1.0, 2.0, 3.0, 7.5, 42.0, 1000.0}) {
    CHECK(std::abs(lambert_w(x) - lambert_w_bisect(x)) <= 1e-9);
    double w = lambert_w(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-9 * std::max(1.0, x));
  }
}

TEST_CASE("sample count") {
  CHECK(sample_count(0.99, 0.1, 1) == 340166);   // the "roughly 340000" figure
  CHECK(sample_count(0.99, 0.1, 10) == 34017);
  CHECK(sample_count(1e-12, 0.5, 1) == 1);       // clamped at one sample
  CHECK_THROWS_AS(sample_count(0.0, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_count(0.5, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_count(0.5, 0.1, 0), std::invalid_argument);
}

TEST_CASE("theoretical bounds") {
  CHECK(theoretical_bound(Algorithm::kA, Rule::kMonroe, 10, 3) ==
        doctest::Approx(1.0 - 2.0 / 18.0 - (11.0 / 6.0) / 3.0).epsilon(1e-9));
  CHECK(theoretical_bound(Algorithm::kGM, Rule::kCC, 50, 7) ==
        doctest::Approx(0.6321205588).epsilon(1e-9));
  CHECK(theoretical_bound(Algorithm::kP, Rule::kCC, 17, 3) ==
        doctest::Approx(1.0 - 2.0 * lambert_w(3.0) / 3.0).epsilon(1e-9));
  CHECK(theoretical_bound(Algorithm::kR, Rule::kCC, 10, 3) ==
        doctest::Approx(0.75 * 1.1).epsilon(1e-9));
  // Bounds are clamped into [0, 1]; the greedy Monroe formula dips below zero
  // for committees nearly as large as the alternative set.
  CHECK(theoretical_bound(Algorithm::kA, Rule::kMonroe, 2, 2) == 0.0);
  for (int m : {2, 5, 20})
    for (int k = 1; k <= m; ++k)
      for (Algorithm alg : {Algorithm::kA, Algorithm::kGM, Algorithm::kR}) {
        double bound = theoretical_bound(alg, Rule::kMonroe, m, k);
        CHECK(bound >= 0.0);
        CHECK(bound <= 1.0);
      }
  CHECK_THROWS_AS(theoretical_bound(Algorithm::kP, Rule::kMonroe, 10, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(theoretical_bound(Algorithm::kExact, Rule::kCC, 10, 3),
                  std::invalid_argument);
}

TEST_CASE("solvers are deterministic") {
  PreferenceProfile profile = test::random_profile(7, 15, 88);
  ScoringFunction psf = ScoringFunction::borda(7);
  for (int k : {1, 3}) {
    SolveResult first = algorithm_c_monroe(profile, psf, k, 4);
    SolveResult second = algorithm_c_monroe(profile, psf, k, 4);
    CHECK(first.winners == second.winners);
    CHECK(first.assignment.rep == second.assignment.rep);
    SolveResult gm1 = algorithm_gm(profile, psf, k, Rule::kMonroe);
    SolveResult gm2 = algorithm_gm(profile, psf, k, Rule::kMonroe);
    CHECK(gm1.assignment.rep == gm2.assignment.rep);
  }
}

TEST_SUITE_END();
