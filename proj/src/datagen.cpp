#include "fpr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fpr/rng.hpp"

namespace fpr {

namespace {

void check_permutation(const std::vector<int>& order, int m, const char* what) {
  if (static_cast<int>(order.size()) != m)
    throw std::invalid_argument(std::string(what) + ": length differs from m");
  std::vector<char> seen(m + 1, 0);
  for (int alt : order) {
    if (alt < 1 || alt > m || seen[alt])
      throw std::invalid_argument(std::string(what) + ": not a permutation of 1..m");
    seen[alt] = 1;
  }
}

std::vector<int> random_order(int m, Rng& rng) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  rng.shuffle(order);
  return order;
}

// Repeated insertion within an already-seeded stream.
std::vector<int> mallows_vote(const std::vector<int>& center, double phi, Rng& rng) {
  const int m = static_cast<int>(center.size());
  std::vector<int> vote;
  vote.reserve(m);
  vote.push_back(center[0]);
  std::vector<double> power(m, 1.0);
  for (int e = 1; e < m; ++e) power[e] = power[e - 1] * phi;
  for (int j = 2; j <= m; ++j) {
    double total = 0.0;
    for (int e = 0; e < j; ++e) total += power[e];
    double draw = rng.uniform01() * total;
    int slot = j;  // fallback for rounding at the top end
    double acc = 0.0;
    for (int i = 1; i <= j; ++i) {
      acc += power[j - i];
      if (draw < acc) {
        slot = i;
        break;
      }
    }
    vote.insert(vote.begin() + (slot - 1), center[j - 1]);
  }
  return vote;
}

void check_dims(int m, int n) {
  if (m < 1) throw std::invalid_argument("generator: m must be >= 1");
  if (n < 1) throw std::invalid_argument("generator: n must be >= 1");
}

}  // namespace

int kendall_tau(const std::vector<int>& r1, const std::vector<int>& r2) {
  const int m = static_cast<int>(r1.size());
  check_permutation(r1, m, "kendall_tau");
  check_permutation(r2, m, "kendall_tau");

  std::vector<int> pos2(m + 1, 0);
  for (int r = 0; r < m; ++r) pos2[r2[r]] = r;
  int discordant = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (pos2[r1[i]] > pos2[r1[j]]) ++discordant;
  return discordant;
}

PreferenceProfile gen_impartial_culture(int m, int n, std::uint64_t seed) {
  check_dims(m, n);
  std::vector<std::vector<int>> rankings;
  rankings.reserve(n);
  for (int vote = 0; vote < n; ++vote) {
    Rng rng(derive_stream(seed, vote));
    rankings.push_back(random_order(m, rng));
  }
  return PreferenceProfile(m, std::move(rankings));
}

PreferenceProfile gen_urn(int m, int n, std::uint64_t seed, const UrnParams& params) {
  check_dims(m, n);
  if (params.ratio < 0) throw std::invalid_argument("urn: ratio must be >= 0");
  std::vector<std::vector<int>> rankings;
  rankings.reserve(n);
  for (int vote = 0; vote < n; ++vote) {
    Rng rng(derive_stream(seed, vote));
    if (vote > 0 && params.ratio > 0) {
      double fresh_probability = 1.0 / (1.0 + vote * params.ratio);
      if (rng.uniform01() >= fresh_probability) {
        rankings.push_back(rankings[rng.next_below(vote)]);
        continue;
      }
    }
    rankings.push_back(random_order(m, rng));
  }
  return PreferenceProfile(m, std::move(rankings));
}

PreferenceProfile gen_mallows(int m, int n, const std::vector<int>& center, double phi,
                              std::uint64_t seed) {
  check_dims(m, n);
  check_permutation(center, m, "mallows center");
  if (!(phi >= 0.0 && phi <= 1.0))
    throw std::invalid_argument("mallows: phi must be in [0, 1]");
  std::vector<std::vector<int>> rankings;
  rankings.reserve(n);
  for (int vote = 0; vote < n; ++vote) {
    Rng rng(derive_stream(seed, vote));
    rankings.push_back(mallows_vote(center, phi, rng));
  }
  return PreferenceProfile(m, std::move(rankings));
}

MixtureParams random_mixture_params(int m, int components, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("mixture: m must be >= 1");
  if (components < 1) throw std::invalid_argument("mixture: components must be >= 1");
  Rng rng(derive_stream(seed, kParamsStream));
  MixtureParams params;
  params.lambdas.resize(components);
  double total = 0.0;
  for (double& weight : params.lambdas) {
    weight = rng.uniform01();
    total += weight;
  }
  if (total <= 0.0) total = 1.0;
  for (double& weight : params.lambdas) weight /= total;
  params.phis.resize(components);
  for (double& phi : params.phis) phi = rng.uniform01();
  params.centers.reserve(components);
  for (int c = 0; c < components; ++c) params.centers.push_back(random_order(m, rng));
  return params;
}

PreferenceProfile gen_mallows_mixture(int m, int n, std::uint64_t seed,
                                      const MixtureParams& params) {
  check_dims(m, n);
  const int a = params.components();
  if (a < 1 || static_cast<int>(params.phis.size()) != a ||
      static_cast<int>(params.centers.size()) != a)
    throw std::invalid_argument("mixture: component vectors must have equal length");
  double total = 0.0;
  for (double weight : params.lambdas) {
    if (weight < 0) throw std::invalid_argument("mixture: negative weight");
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture: weights must sum to 1");
  for (double phi : params.phis)
    if (!(phi >= 0.0 && phi <= 1.0))
      throw std::invalid_argument("mixture: phi must be in [0, 1]");
  for (const auto& center : params.centers) check_permutation(center, m, "mixture center");

  std::vector<std::vector<int>> rankings;
  rankings.reserve(n);
  for (int vote = 0; vote < n; ++vote) {
    Rng rng(derive_stream(seed, vote));
    int component = 0;
    if (a > 1) {
      double draw = rng.uniform01();
      double acc = 0.0;
      for (int c = 0; c < a; ++c) {
        acc += params.lambdas[c];
        if (draw < acc) {
          component = c;
          break;
        }
        component = c;  // rounding at the top lands in the last component
      }
    }
    rankings.push_back(mallows_vote(params.centers[component], params.phis[component], rng));
  }
  return PreferenceProfile(m, std::move(rankings));
}

PreferenceProfile gen_mallows_mixture(int m, int n, std::uint64_t seed) {
  return gen_mallows_mixture(m, n, seed, random_mixture_params(m, 5, seed));
}

}  // namespace fpr
