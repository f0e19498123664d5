#pragma once

#include <cstdint>

#include "fpr/core.hpp"

namespace fpr {

// Number of alternative pairs the two rankings order oppositely.
int kendall_tau(const std::vector<int>& r1, const std::vector<int>& r2);

// n uniform random orders. Vote i draws from stream derive_stream(seed, i).
PreferenceProfile gen_impartial_culture(int m, int n, std::uint64_t seed);

struct UrnParams {
  // Reinforcement weight relative to the m! fresh orders: each cast vote adds
  // ratio * m! weight for itself. ratio = 0 reduces to impartial culture
  // (identical output for the same seed).
  double ratio = 0.05;
};

// Polya-Eggenberger urn votes. Vote t is fresh with probability
// 1 / (1 + t * ratio), otherwise a copy of a uniformly chosen earlier vote;
// this is the urn process without materializing the m! orders.
PreferenceProfile gen_urn(int m, int n, std::uint64_t seed, const UrnParams& params = {});

// Mallows model around `center` with dispersion phi in [0, 1], sampled by
// repeated insertion: the center's j-th candidate lands at slot i <= j with
// probability phi^(j-i) / (1 + phi + ... + phi^(j-1)).
PreferenceProfile gen_mallows(int m, int n, const std::vector<int>& center, double phi,
                              std::uint64_t seed);

struct MixtureParams {
  std::vector<double> lambdas;            // component weights, sum to 1
  std::vector<double> phis;               // per-component dispersion
  std::vector<std::vector<int>> centers;  // per-component center order

  int components() const { return static_cast<int>(lambdas.size()); }
};

// Weights normalized from independent uniforms, dispersions uniform, centers
// uniform random orders; drawn from stream kParamsStream.
MixtureParams random_mixture_params(int m, int components, std::uint64_t seed);

// Mixture of Mallows models: vote i picks its component by weight, then
// samples that component's Mallows model, all within vote i's stream. A
// single-component mixture is byte-identical to gen_mallows.
PreferenceProfile gen_mallows_mixture(int m, int n, std::uint64_t seed,
                                      const MixtureParams& params);

// Mixture with the default five components drawn at random from the seed.
PreferenceProfile gen_mallows_mixture(int m, int n, std::uint64_t seed);

}  // namespace fpr
