#pragma once

#include "fpr/core.hpp"

namespace fpr {

// Explicit min-cost/max-flow instance. Nodes are dense indices; arcs keep
// insertion order, which fixes the tie-breaking of the solver.
struct FlowNetwork {
  struct Arc {
    int from = 0;
    int to = 0;
    long long capacity = 0;
    long long cost = 0;
  };

  int node_count = 0;
  int source = -1;
  int sink = -1;
  std::vector<Arc> arcs;

  int add_node() { return node_count++; }
  int add_arc(int from, int to, long long capacity, long long cost);
};

struct FlowResult {
  long long flow = 0;
  long long cost = 0;
  std::vector<long long> arc_flow;  // parallel to FlowNetwork::arcs
};

// Integral maximum flow of minimum cost via successive shortest augmenting
// paths with node potentials. Deterministic: arcs relax in insertion order
// and equal-distance nodes resolve by index.
FlowResult min_cost_max_flow(const FlowNetwork& network);

// Each agent gets its best-ranked member of `members`.
Assignment optimal_cc_assignment(const PreferenceProfile& profile, const ScoringFunction& psf,
                                 const std::vector<int>& members);

// Satisfaction-optimal Monroe assignment into `members`. With |members| = K
// the result is complete and balanced (every load in [floor(n/K),
// ceil(n/K)]); with |members| < K it is the best partial assignment with at
// most ceil(n/K) agents per member, remaining agents unassigned.
Assignment optimal_monroe_assignment(const PreferenceProfile& profile,
                                     const ScoringFunction& psf,
                                     const std::vector<int>& members, int committee_size);

// Best partial assignment under arbitrary per-alternative load caps (the
// capacity-function form of the Monroe subproblem).
Assignment optimal_capacitated_assignment(const PreferenceProfile& profile,
                                          const ScoringFunction& psf,
                                          const CapacityFunction& caps, int committee_size);

// Exhaustive oracle for optimal_monroe_assignment. Guarded to n <= 10 and
// |members| <= 4.
Assignment brute_force_assignment(const PreferenceProfile& profile, const ScoringFunction& psf,
                                  const std::vector<int>& members, int committee_size);

namespace detail {

// The two interchangeable engines behind the Monroe assignment; exposed so
// tests can pin them against each other. `caps` uses the CapacityFunction
// layout (size m, 0 = excluded).
Assignment capacitated_via_network(const PreferenceProfile& profile, const ScoringFunction& psf,
                                   const CapacityFunction& caps, int committee_size);
Assignment capacitated_via_transport(const PreferenceProfile& profile, const ScoringFunction& psf,
                                     const CapacityFunction& caps, int committee_size);

}  // namespace detail

}  // namespace fpr
