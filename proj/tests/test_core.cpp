#include "fpr/core.hpp"

#include "doctest.h"
#include "fpr/rng.hpp"
#include "test_util.hpp"

using namespace fpr;

TEST_SUITE_BEGIN("core");

TEST_CASE("position lookups") {
  PreferenceProfile profile(3, {{3, 1, 2}});
  CHECK(profile.position(1, 3) == 1);  // top of the ranking
  CHECK(profile.position(1, 1) == 2);
  CHECK(profile.position(1, 2) == 3);
  CHECK(profile.alternative_at(1, 1) == 3);

  SUBCASE("null alternative ranks last") {
    PreferenceProfile wide(10, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
    CHECK(wide.position(1, kNullAlternative) == 10);
  }
  SUBCASE("argument errors") {
    CHECK_THROWS_AS(profile.position(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(profile.position(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(profile.position(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(profile.position(1, -1), std::invalid_argument);
  }
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(PreferenceProfile(3, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceProfile(3, {{1, 2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceProfile(3, {{1, 2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceProfile(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceProfile(0, {{}}), std::invalid_argument);
}

TEST_CASE("position round-trips the ranking") {
  PreferenceProfile profile = test::random_profile(7, 12, 99);
  for (int i = 1; i <= profile.agent_count(); ++i)
    for (int r = 1; r <= profile.alternative_count(); ++r)
      CHECK(profile.position(i, profile.alternative_at(i, r)) == r);
}

TEST_CASE("borda psf") {
  ScoringFunction borda = ScoringFunction::borda(10);
  CHECK(borda.at(1) == 9);
  CHECK(borda.at(10) == 0);
  CHECK(ScoringFunction::borda(1).values() == std::vector<Satisfaction>{0});
  CHECK(ScoringFunction::borda(6).values() ==
        std::vector<Satisfaction>{5, 4, 3, 2, 1, 0});
  CHECK(borda.is_borda());
  CHECK_THROWS_AS(ScoringFunction::borda(0), std::invalid_argument);
}

TEST_CASE("psf validation") {
  CHECK_THROWS_AS(ScoringFunction({2, 1}), std::invalid_argument);   // last not 0
  CHECK_THROWS_AS(ScoringFunction({1, 2, 0}), std::invalid_argument);  // increasing
  CHECK_THROWS_AS(ScoringFunction({-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ScoringFunction({}), std::invalid_argument);
  CHECK_FALSE(ScoringFunction({3, 3, 3, 2, 1, 0}).is_borda());
}

TEST_CASE("satisfaction") {
  SUBCASE("all agents on their top choice") {
    std::vector<std::vector<int>> rankings(100);
    Rng rng(7);
    for (auto& r : rankings) {
      r.resize(10);
      std::iota(r.begin(), r.end(), 1);
      rng.shuffle(r);
    }
    PreferenceProfile profile(10, rankings);
    std::vector<int> rep(100);
    for (int i = 1; i <= 100; ++i) rep[i - 1] = profile.alternative_at(i, 1);
    Assignment assignment(Rule::kCC, 100, rep);
    CHECK(satisfaction(profile, ScoringFunction::borda(10), assignment) == 900);
  }
  SUBCASE("all null scores zero") {
    PreferenceProfile profile(3, {{1, 2, 3}, {2, 1, 3}});
    Assignment assignment(Rule::kMonroe, 2, {0, 0});
    CHECK(satisfaction(profile, ScoringFunction::borda(3), assignment) == 0);
  }
  SUBCASE("hand-enumerated two agents") {
    PreferenceProfile profile(3, {{1, 2, 3}, {2, 1, 3}});
    Assignment assignment(Rule::kCC, 1, {1, 1});
    CHECK(satisfaction(profile, ScoringFunction::borda(3), assignment) == 3);
  }
  SUBCASE("dimension mismatch") {
    PreferenceProfile profile(3, {{1, 2, 3}});
    Assignment assignment(Rule::kCC, 1, {1});
    CHECK_THROWS_AS(satisfaction(profile, ScoringFunction::borda(4), assignment),
                    std::invalid_argument);
    Assignment wrong_n(Rule::kCC, 1, {1, 1});
    CHECK_THROWS_AS(satisfaction(profile, ScoringFunction::borda(3), wrong_n),
                    std::invalid_argument);
  }
}

TEST_CASE("ideal satisfaction") {
  PreferenceProfile profile = test::random_profile(10, 1000, 3);
  CHECK(ideal_satisfaction(profile, ScoringFunction::borda(10)) == 9000);

  std::vector<std::vector<int>> rankings(120, {1, 2, 3, 4, 5, 6});
  PreferenceProfile courses(6, rankings);
  CHECK(ideal_satisfaction(courses, ScoringFunction({3, 3, 3, 2, 1, 0})) == 360);

  PreferenceProfile tiny(1, {{1}});
  CHECK(ideal_satisfaction(tiny, ScoringFunction::borda(1)) == 0);
}

TEST_CASE("satisfaction properties over random instances") {
  Rng rng(1234);
  for (int round = 0; round < 25; ++round) {
    int m = 2 + static_cast<int>(rng.next_below(5));
    int n = 1 + static_cast<int>(rng.next_below(8));
    PreferenceProfile profile = test::random_profile(m, n, rng.next_u64());
    ScoringFunction psf = test::random_psf(m, rng);
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) rep[i] = 1 + static_cast<int>(rng.next_below(m));
    Assignment assignment(Rule::kCC, m, rep);
    Satisfaction sat = satisfaction(profile, psf, assignment);

    CHECK(sat >= 0);
    CHECK(sat <= ideal_satisfaction(profile, psf));

    // Additivity across agents: reordering agents leaves the total unchanged.
    std::vector<std::vector<int>> reversed_rankings;
    std::vector<int> reversed_rep;
    for (int i = n; i >= 1; --i) {
      reversed_rankings.push_back(profile.ranking(i));
      reversed_rep.push_back(rep[i - 1]);
    }
    PreferenceProfile reversed(m, reversed_rankings);
    CHECK(satisfaction(reversed, psf, Assignment(Rule::kCC, m, reversed_rep)) == sat);

    // Scaling alpha by c scales satisfaction by exactly c.
    std::vector<Satisfaction> scaled = psf.values();
    for (auto& value : scaled) value *= 7;
    CHECK(satisfaction(profile, ScoringFunction(scaled), assignment) == 7 * sat);
  }
}

TEST_CASE("monroe validity") {
  SUBCASE("balanced loads pass") {
    std::vector<int> rep(10);
    for (int i = 0; i < 10; ++i) rep[i] = i < 4 ? 1 : (i < 7 ? 2 : 3);
    MonroeValidity report = validate_monroe(Assignment(Rule::kMonroe, 3, rep), 10, 3);
    CHECK(report.ok);
    CHECK_FALSE(report.partial);
  }
  SUBCASE("floor violation reported") {
    std::vector<int> rep(10);
    for (int i = 0; i < 10; ++i) rep[i] = i < 4 ? 1 : (i < 8 ? 2 : 3);  // loads 4,4,2
    MonroeValidity report = validate_monroe(Assignment(Rule::kMonroe, 3, rep), 10, 3);
    CHECK_FALSE(report.ok);
    CHECK(report.violations.size() == 1);
  }
  SUBCASE("equal loads when K divides n") {
    std::vector<int> rep(9);
    for (int i = 0; i < 9; ++i) rep[i] = i / 3 + 1;
    CHECK(validate_monroe(Assignment(Rule::kMonroe, 3, rep), 9, 3).ok);
  }
  SUBCASE("partial assignments check the upper bound only") {
    Assignment partial(Rule::kMonroe, 3, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
    MonroeValidity report = validate_monroe(partial, 10, 3);
    CHECK(report.partial);
    CHECK(report.ok);

    Assignment heavy(Rule::kMonroe, 3, {1, 1, 1, 1, 1, 0, 0, 0, 0, 0});
    CHECK_FALSE(validate_monroe(heavy, 10, 3).ok);  // load 5 > ceil(10/3)
  }
  SUBCASE("requires a monroe assignment") {
    Assignment cc(Rule::kCC, 1, {1, 1});
    CHECK_THROWS_AS(validate_monroe(cc, 2, 1), std::invalid_argument);
  }
}

TEST_CASE("assignment invariants") {
  CHECK_THROWS_AS(Assignment(Rule::kCC, 1, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Assignment(Rule::kCC, 2, {1, 0}), std::invalid_argument);
  Assignment partial(Rule::kMonroe, 2, {1, 0});
  CHECK(partial.winners == std::vector<int>{1});
  CHECK_FALSE(partial.complete());
}

TEST_SUITE_END();
