#include "fpr/assign.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <set>

namespace fpr {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// Instances up to this many agents go through the explicit flow network;
// larger ones use the condensed transport engine.
constexpr int kNetworkEngineMaxAgents = 200;

int ceil_div(int a, int b) { return (a + b - 1) / b; }

std::vector<int> checked_members(const PreferenceProfile& profile,
                                 const std::vector<int>& members) {
  std::vector<int> sorted(members);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != members.size())
    throw std::invalid_argument("assignment: duplicate alternative in member set");
  for (int alt : sorted)
    if (alt < 1 || alt > profile.alternative_count())
      throw std::invalid_argument("assignment: member id out of range");
  return sorted;
}

}  // namespace

int FlowNetwork::add_arc(int from, int to, long long capacity, long long cost) {
  if (from < 0 || from >= node_count || to < 0 || to >= node_count)
    throw std::invalid_argument("flow: arc endpoint out of range");
  if (from == to) throw std::invalid_argument("flow: self-loop arc");
  if (capacity < 0) throw std::invalid_argument("flow: negative capacity");
  arcs.push_back(Arc{from, to, capacity, cost});
  return static_cast<int>(arcs.size()) - 1;
}

FlowResult min_cost_max_flow(const FlowNetwork& network) {
  if (network.node_count == 0) return {};
  if (network.source < 0 || network.source >= network.node_count || network.sink < 0 ||
      network.sink >= network.node_count)
    throw std::invalid_argument("flow: source/sink not set");

  const int node_count = network.node_count;
  const int arc_count = static_cast<int>(network.arcs.size());

  // Residual slots: 2i forward, 2i+1 backward.
  std::vector<long long> residual(2 * arc_count), cost(2 * arc_count);
  std::vector<int> head(2 * arc_count);
  std::vector<std::vector<int>> adjacent(node_count);
  bool has_negative = false;
  for (int i = 0; i < arc_count; ++i) {
    const auto& arc = network.arcs[i];
    residual[2 * i] = arc.capacity;
    cost[2 * i] = arc.cost;
    head[2 * i] = arc.to;
    residual[2 * i + 1] = 0;
    cost[2 * i + 1] = -arc.cost;
    head[2 * i + 1] = arc.from;
    adjacent[arc.from].push_back(2 * i);
    adjacent[arc.to].push_back(2 * i + 1);
    if (arc.cost < 0) has_negative = true;
  }

  std::vector<long long> potential(node_count, 0);
  if (has_negative) {
    // Bellman-Ford over the initial residual graph.
    std::vector<long long> dist(node_count, kInf);
    dist[network.source] = 0;
    for (int round = 0; round < node_count; ++round) {
      bool changed = false;
      for (int i = 0; i < arc_count; ++i) {
        const auto& arc = network.arcs[i];
        if (arc.capacity > 0 && dist[arc.from] < kInf &&
            dist[arc.from] + arc.cost < dist[arc.to]) {
          dist[arc.to] = dist[arc.from] + arc.cost;
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (int v = 0; v < node_count; ++v) potential[v] = dist[v] < kInf ? dist[v] : 0;
  }

  FlowResult result;
  result.arc_flow.assign(arc_count, 0);

  std::vector<long long> dist(node_count);
  std::vector<int> parent_slot(node_count);
  using QueueItem = std::pair<long long, int>;

  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent_slot.begin(), parent_slot.end(), -1);
    dist[network.source] = 0;
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
    queue.push({0, network.source});
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (d > dist[u]) continue;
      for (int slot : adjacent[u]) {
        if (residual[slot] <= 0) continue;
        int v = head[slot];
        long long nd = d + cost[slot] + potential[u] - potential[v];
        if (nd < dist[v]) {
          dist[v] = nd;
          parent_slot[v] = slot;
          queue.push({nd, v});
        }
      }
    }
    if (dist[network.sink] >= kInf) break;

    for (int v = 0; v < node_count; ++v)
      potential[v] += std::min(dist[v], dist[network.sink]);

    long long bottleneck = kInf;
    for (int v = network.sink; v != network.source;) {
      int slot = parent_slot[v];
      bottleneck = std::min(bottleneck, residual[slot]);
      v = head[slot ^ 1];
    }
    for (int v = network.sink; v != network.source;) {
      int slot = parent_slot[v];
      residual[slot] -= bottleneck;
      residual[slot ^ 1] += bottleneck;
      result.cost += bottleneck * cost[slot];
      v = head[slot ^ 1];
    }
    result.flow += bottleneck;
  }

  for (int i = 0; i < arc_count; ++i) result.arc_flow[i] = residual[2 * i + 1];
  return result;
}

Assignment optimal_cc_assignment(const PreferenceProfile& profile, const ScoringFunction& psf,
                                 const std::vector<int>& members) {
  if (psf.size() != profile.alternative_count())
    throw std::invalid_argument("assignment: psf length differs from m");
  std::vector<int> sorted = checked_members(profile, members);
  if (sorted.empty()) throw std::invalid_argument("assignment: member set is empty");

  const int n = profile.agent_count();
  std::vector<int> rep(n, kNullAlternative);
  for (int i = 1; i <= n; ++i) {
    int best = sorted.front();
    int best_pos = profile.position(i, best);
    for (std::size_t j = 1; j < sorted.size(); ++j) {
      int pos = profile.position(i, sorted[j]);
      if (pos < best_pos) {
        best_pos = pos;
        best = sorted[j];
      }
    }
    rep[i - 1] = best;
  }
  return Assignment(Rule::kCC, static_cast<int>(sorted.size()), std::move(rep));
}

namespace detail {

Assignment capacitated_via_network(const PreferenceProfile& profile, const ScoringFunction& psf,
                                   const CapacityFunction& caps, int committee_size) {
  const int n = profile.agent_count();
  const int m = profile.alternative_count();
  std::vector<int> members;
  for (int a = 1; a <= m; ++a)
    if (caps.cap[a - 1] > 0) members.push_back(a);
  const int t = static_cast<int>(members.size());
  const int floor_load = n / committee_size;
  const int ceil_load = ceil_div(n, committee_size);

  FlowNetwork network;
  const int source = network.add_node();
  const int agent_base = network.node_count;
  for (int i = 0; i < n; ++i) network.add_node();
  const int member_base = network.node_count;
  for (int j = 0; j < t; ++j) network.add_node();
  int overflow = -1;
  if (caps.floor_required) overflow = network.add_node();
  const int sink = network.add_node();
  network.source = source;
  network.sink = sink;

  for (int i = 0; i < n; ++i) network.add_arc(source, agent_base + i, 1, 0);
  const int assignment_arc_base = static_cast<int>(network.arcs.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < t; ++j)
      network.add_arc(agent_base + i, member_base + j, 1,
                      psf.top() - psf.at(profile.position(i + 1, members[j])));
  if (caps.floor_required) {
    for (int j = 0; j < t; ++j) {
      network.add_arc(member_base + j, sink, floor_load, 0);
      network.add_arc(member_base + j, overflow, ceil_load - floor_load, 0);
    }
    network.add_arc(overflow, sink, n % committee_size, 0);
  } else {
    for (int j = 0; j < t; ++j)
      network.add_arc(member_base + j, sink, caps.cap[members[j] - 1], 0);
  }

  FlowResult flow = min_cost_max_flow(network);

  std::vector<int> rep(n, kNullAlternative);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < t; ++j)
      if (flow.arc_flow[assignment_arc_base + i * t + j] > 0) rep[i] = members[j];
  // Capacity functions may spread agents over more than K alternatives; the
  // assignment targets whichever is larger.
  return Assignment(Rule::kMonroe, std::max(committee_size, t), std::move(rep));
}

namespace {

// Condensed successive-shortest-path solver. Agent nodes of the canonical
// network are contracted away: a Dijkstra pass runs over members, the
// overflow node, and the sink only, with member-to-member arcs realized as
// "cheapest reassignment of an agent currently on the tail member". Keys
// c(i,v) - c(i,u) are potential-free, so each ordered member pair keeps a
// lazy min-heap of its assigned agents.
class TransportSolver {
 public:
  TransportSolver(const PreferenceProfile& profile, const ScoringFunction& psf,
                  std::vector<int> members, std::vector<int> direct_caps, bool floor_mode,
                  int committee_size)
      : profile_(profile),
        psf_(psf),
        members_(std::move(members)),
        floor_mode_(floor_mode),
        n_(profile.agent_count()),
        t_(static_cast<int>(members_.size())) {
    member_count_ = t_ + (floor_mode_ ? 0 : 1);  // partial mode adds the null member
    bottom_ = floor_mode_ ? -1 : t_;
    overflow_node_ = floor_mode_ ? member_count_ : -1;
    sink_ = member_count_ + (floor_mode_ ? 1 : 0);
    node_count_ = sink_ + 1;

    caps_.assign(member_count_, 0);
    for (int j = 0; j < t_; ++j) caps_[j] = direct_caps[j];
    if (!floor_mode_) caps_[bottom_] = n_;
    if (floor_mode_) {
      int floor_load = n_ / committee_size;
      int ceil_load = ceil_div(n_, committee_size);
      for (int j = 0; j < t_; ++j) caps_[j] = floor_load;
      over_cap_ = ceil_load - floor_load;
      pool_cap_ = n_ % committee_size;
    }

    load_.assign(member_count_, 0);
    direct_.assign(member_count_, 0);
    over_.assign(member_count_, 0);
    potential_.assign(node_count_, 0);
    rep_.assign(n_, -1);
    heaps_.resize(static_cast<std::size_t>(member_count_) * member_count_);
    dist_.resize(node_count_);
    done_.resize(node_count_);
    prev_node_.resize(node_count_);
    prev_agent_.resize(node_count_);
  }

  Assignment solve(int committee_size) {
    for (int agent = 0; agent < n_; ++agent) augment(agent);
    std::vector<int> rep(n_, kNullAlternative);
    for (int agent = 0; agent < n_; ++agent)
      if (rep_[agent] >= 0 && rep_[agent] < t_) rep[agent] = members_[rep_[agent]];
    return Assignment(Rule::kMonroe, std::max(committee_size, t_), std::move(rep));
  }

 private:
  using Heap = std::priority_queue<std::pair<long long, int>,
                                   std::vector<std::pair<long long, int>>, std::greater<>>;

  long long cost(int agent, int member) const {
    if (member == bottom_) return psf_.top();
    return psf_.top() - psf_.at(profile_.position(agent + 1, members_[member]));
  }

  Heap& heap(int from, int to) {
    return heaps_[static_cast<std::size_t>(from) * member_count_ + to];
  }

  void index_agent(int agent, int member) {
    for (int v = 0; v < member_count_; ++v)
      if (v != member) heap(member, v).push({cost(agent, v) - cost(agent, member), agent});
  }

  void relax(int v, long long nd, int from, int agent) {
    if (nd < dist_[v]) {
      dist_[v] = nd;
      prev_node_[v] = from;
      prev_agent_[v] = agent;
    }
  }

  void augment(int agent) {
    std::fill(dist_.begin(), dist_.end(), kInf);
    std::fill(done_.begin(), done_.end(), char{0});
    std::fill(prev_node_.begin(), prev_node_.end(), -1);
    std::fill(prev_agent_.begin(), prev_agent_.end(), -1);
    for (int j = 0; j < member_count_; ++j)
      relax(j, cost(agent, j) - potential_[j], kEntry, agent);

    while (true) {
      int u = -1;
      for (int v = 0; v < node_count_; ++v)
        if (!done_[v] && dist_[v] < kInf && (u == -1 || dist_[v] < dist_[u])) u = v;
      assert(u != -1);  // a viable member or the null member always remains
      if (u == sink_) break;
      done_[u] = 1;

      if (u < member_count_) {
        for (int v = 0; v < member_count_; ++v) {
          if (v == u || done_[v]) continue;
          auto& h = heap(u, v);
          while (!h.empty() && rep_[h.top().second] != u) h.pop();
          if (!h.empty())
            relax(v, dist_[u] + h.top().first + potential_[u] - potential_[v], u,
                  h.top().second);
        }
        if (direct_[u] < caps_[u])
          relax(sink_, dist_[u] + potential_[u] - potential_[sink_], u, -1);
        if (floor_mode_ && over_[u] < over_cap_ && !done_[overflow_node_])
          relax(overflow_node_, dist_[u] + potential_[u] - potential_[overflow_node_], u, -1);
      } else if (u == overflow_node_) {
        if (pool_used_ < pool_cap_)
          relax(sink_, dist_[u] + potential_[u] - potential_[sink_], u, -1);
        for (int v = 0; v < member_count_; ++v)
          if (!done_[v] && over_[v] > 0)
            relax(v, dist_[u] + potential_[u] - potential_[v], u, -1);
      }
    }

    long long reached = dist_[sink_];
    for (int v = 0; v < node_count_; ++v) potential_[v] += std::min(dist_[v], reached);

    // Rebuild the path and apply it front to back.
    std::vector<int> path;
    for (int v = sink_; v != kEntry; v = prev_node_[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    for (std::size_t step = 0; step < path.size(); ++step) {
      int v = path[step];
      if (step == 0) {
        rep_[agent] = v;
        ++load_[v];
        index_agent(agent, v);
        continue;
      }
      int u = path[step - 1];
      if (v == sink_) {
        if (u == overflow_node_)
          ++pool_used_;
        else
          ++direct_[u];
      } else if (v == overflow_node_) {
        ++over_[u];
      } else if (u == overflow_node_) {
        --over_[v];
      } else {
        int moved = prev_agent_[v];
        rep_[moved] = v;
        --load_[u];
        ++load_[v];
        index_agent(moved, v);
      }
    }
#ifndef NDEBUG
    for (int j = 0; j < member_count_; ++j) assert(load_[j] == direct_[j] + over_[j]);
#endif
  }

  static constexpr int kEntry = -2;

  const PreferenceProfile& profile_;
  const ScoringFunction& psf_;
  std::vector<int> members_;
  bool floor_mode_;
  int n_, t_;
  int member_count_ = 0;
  int bottom_ = -1;
  int overflow_node_ = -1;
  int sink_ = -1;
  int node_count_ = 0;
  std::vector<int> caps_;
  int over_cap_ = 0, pool_cap_ = 0, pool_used_ = 0;
  std::vector<int> load_, direct_, over_;
  std::vector<long long> potential_;
  std::vector<int> rep_;
  std::vector<Heap> heaps_;
  std::vector<long long> dist_;
  std::vector<char> done_;
  std::vector<int> prev_node_, prev_agent_;
};

}  // namespace

Assignment capacitated_via_transport(const PreferenceProfile& profile, const ScoringFunction& psf,
                                     const CapacityFunction& caps, int committee_size) {
  const int m = profile.alternative_count();
  std::vector<int> members;
  std::vector<int> direct_caps;
  for (int a = 1; a <= m; ++a)
    if (caps.cap[a - 1] > 0) {
      members.push_back(a);
      direct_caps.push_back(caps.cap[a - 1]);
    }
  TransportSolver solver(profile, psf, std::move(members), std::move(direct_caps),
                         caps.floor_required, committee_size);
  return solver.solve(committee_size);
}

}  // namespace detail

Assignment optimal_capacitated_assignment(const PreferenceProfile& profile,
                                          const ScoringFunction& psf,
                                          const CapacityFunction& caps, int committee_size) {
  const int n = profile.agent_count();
  const int m = profile.alternative_count();
  if (psf.size() != m) throw std::invalid_argument("assignment: psf length differs from m");
  if (static_cast<int>(caps.cap.size()) != m)
    throw std::invalid_argument("assignment: capacity function length differs from m");
  if (committee_size < 1 || committee_size > m)
    throw std::invalid_argument("assignment: K out of range");
  for (int value : caps.cap)
    if (value < 0) throw std::invalid_argument("assignment: negative capacity");
  if (caps.floor_required) {
    int ceil_load = ceil_div(n, committee_size);
    int positive = 0;
    for (int value : caps.cap)
      if (value > 0) {
        ++positive;
        if (value != ceil_load)
          throw std::invalid_argument(
              "assignment: floor-bounded capacities must equal ceil(n/K)");
      }
    if (positive != committee_size)
      throw std::invalid_argument("assignment: floor-bounded member count differs from K");
  }
  if (n <= kNetworkEngineMaxAgents)
    return detail::capacitated_via_network(profile, psf, caps, committee_size);
  return detail::capacitated_via_transport(profile, psf, caps, committee_size);
}

Assignment optimal_monroe_assignment(const PreferenceProfile& profile,
                                     const ScoringFunction& psf,
                                     const std::vector<int>& members, int committee_size) {
  std::vector<int> sorted = checked_members(profile, members);
  if (static_cast<int>(sorted.size()) > committee_size)
    throw std::invalid_argument("assignment: member set larger than K");
  if (committee_size < 1 || committee_size > profile.alternative_count())
    throw std::invalid_argument("assignment: K out of range");
  if (sorted.empty())
    return Assignment(Rule::kMonroe, committee_size,
                      std::vector<int>(profile.agent_count(), kNullAlternative));
  int ceil_load = ceil_div(profile.agent_count(), committee_size);
  bool complete = static_cast<int>(sorted.size()) == committee_size;
  CapacityFunction caps = CapacityFunction::uniform(profile.alternative_count(), sorted,
                                                    ceil_load, complete);
  return optimal_capacitated_assignment(profile, psf, caps, committee_size);
}

namespace {

struct BruteState {
  const PreferenceProfile& profile;
  const ScoringFunction& psf;
  const std::vector<int>& members;
  bool complete;
  int ceil_load;
  int floor_load;
  std::vector<int> rep;
  std::vector<int> load;
  Satisfaction current = 0;
  Satisfaction best = -1;
  std::vector<int> best_rep;
};

void brute_recurse(BruteState& state, int agent) {
  const int n = state.profile.agent_count();
  if (agent == n) {
    if (state.complete) {
      for (std::size_t j = 0; j < state.members.size(); ++j)
        if (state.load[j] < state.floor_load) return;
    }
    if (state.current > state.best) {
      state.best = state.current;
      state.best_rep = state.rep;
    }
    return;
  }
  for (std::size_t j = 0; j < state.members.size(); ++j) {
    if (state.load[j] >= state.ceil_load) continue;
    int alt = state.members[j];
    Satisfaction gain = state.psf.at(state.profile.position(agent + 1, alt));
    state.rep[agent] = alt;
    ++state.load[j];
    state.current += gain;
    brute_recurse(state, agent + 1);
    state.current -= gain;
    --state.load[j];
    state.rep[agent] = kNullAlternative;
  }
  if (!state.complete) brute_recurse(state, agent + 1);
}

}  // namespace

Assignment brute_force_assignment(const PreferenceProfile& profile, const ScoringFunction& psf,
                                  const std::vector<int>& members, int committee_size) {
  std::vector<int> sorted = checked_members(profile, members);
  if (static_cast<int>(sorted.size()) > committee_size)
    throw std::invalid_argument("assignment: member set larger than K");
  if (committee_size < 1 || committee_size > profile.alternative_count())
    throw std::invalid_argument("assignment: K out of range");
  if (profile.agent_count() > 10 || sorted.size() > 4)
    throw SizeLimitError("brute force assignment limited to n <= 10 and |S| <= 4");

  const int n = profile.agent_count();
  BruteState state{profile,
                   psf,
                   sorted,
                   static_cast<int>(sorted.size()) == committee_size,
                   ceil_div(n, committee_size),
                   n / committee_size,
                   std::vector<int>(n, kNullAlternative),
                   std::vector<int>(sorted.size(), 0)};
  brute_recurse(state, 0);
  if (state.best < 0)
    throw std::invalid_argument("assignment: no feasible balanced assignment");
  return Assignment(Rule::kMonroe, committee_size, std::move(state.best_rep));
}

}  // namespace fpr
