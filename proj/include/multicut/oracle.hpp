#pragma once

// Brute-force multicut oracles. Two independent modes: full subset
// enumeration over the finite-weight edges, and branch-and-bound on
// demand-path hitting. Ties always resolve to the lexicographically
// smallest sorted edge-id list among minimum-weight solutions.

#include <algorithm>
#include <optional>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/cuts.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"

namespace multicut {

inline constexpr int kOracleMaxEdges = 24;

namespace detail {

inline bool separated(const GraphView& g, const std::vector<bool>& removed,
                      const std::vector<DemandPair>& demands,
                      DemandPair* violated) {
  auto comp = g.components(removed);
  for (const DemandPair& d : demands)
    if (comp[d.first] == comp[d.second]) {
      if (violated) *violated = d;
      return false;
    }
  return true;
}

// BFS path between the endpoints of `d` avoiding removed edges; returns
// edge indices along the path.
inline std::vector<int> demand_path(const GraphView& g,
                                    const std::vector<bool>& removed,
                                    DemandPair d) {
  std::vector<int> via(g.n(), -1);
  VSet seen = vbit(d.first);
  std::deque<VertexId> q{d.first};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    if (v == d.second) break;
    for (int ei : g.incident(v)) {
      if (removed[ei]) continue;
      VertexId u = g.edges()[ei].other(v);
      if (vhas(seen, u)) continue;
      seen |= vbit(u);
      via[u] = ei;
      q.push_back(u);
    }
  }
  check(vhas(seen, d.second), "demand_path called on a separated pair");
  std::vector<int> path;
  for (VertexId v = d.second; v != d.first;) {
    path.push_back(via[v]);
    v = g.edges()[via[v]].other(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

struct BnBState {
  const Instance& inst;
  GraphView g;
  std::vector<DemandPair> demands;
  Weight cutoff;
  std::optional<Solution> best;

  BnBState(const Instance& i, std::vector<DemandPair> d, Weight cut)
      : inst(i), g(GraphView::of(i)), demands(std::move(d)), cutoff(cut) {}

  Weight bound() const {
    Weight b = cutoff;
    if (best && best->weight < b) b = best->weight;
    return b;
  }

  void offer(std::vector<bool>& chosen, Weight w) {
    Solution s;
    s.weight = w;
    for (int i = 0; i < g.edge_count(); ++i)
      if (chosen[i]) s.edges.push_back(g.edges()[i].id);
    std::sort(s.edges.begin(), s.edges.end());
    if (!best || solution_less(s, *best)) best = s;
  }

  void recurse(std::vector<bool>& chosen, std::vector<bool>& excluded,
               Weight w) {
    DemandPair violated;
    if (separated(g, chosen, demands, &violated)) {
      if (w <= cutoff) offer(chosen, w);
      return;
    }
    if (w + 1 > bound()) return;
    std::vector<int> path = demand_path(g, chosen, violated);
    // Every finite multicut in this subproblem hits this path with an
    // edge that is not yet excluded; partition by the first such edge.
    std::vector<int> options;
    for (int ei : path)
      if (!excluded[ei] && !is_inf(g.edges()[ei].w)) options.push_back(ei);
    std::vector<int> newly_excluded;
    for (int ei : options) {
      chosen[ei] = true;
      recurse(chosen, excluded, w_add(w, g.edges()[ei].w));
      chosen[ei] = false;
      excluded[ei] = true;
      newly_excluded.push_back(ei);
    }
    for (int ei : newly_excluded) excluded[ei] = false;
  }
};

}  // namespace detail

// Exact minimum multicut for arbitrary demand lists via branch and bound.
// Returns nullopt when no multicut of weight <= cutoff exists.
inline std::optional<Solution> multicut_branch_and_bound(
    const Instance& inst, const std::vector<DemandPair>& demands,
    Weight cutoff = kInfWeight - 1) {
  detail::BnBState state(inst, demands, cutoff);
  std::vector<bool> chosen(state.g.edge_count(), false);
  std::vector<bool> excluded(state.g.edge_count(), false);
  state.recurse(chosen, excluded, 0);
  return state.best;
}

// Exact minimum multicut by full enumeration over subsets of the
// finite-weight edges.
inline std::optional<Solution> multicut_enumerate(const Instance& inst,
                                                  int max_edges) {
  GraphView g = GraphView::of(inst);
  std::vector<int> finite;
  for (int i = 0; i < g.edge_count(); ++i)
    if (!is_inf(g.edges()[i].w)) finite.push_back(i);
  int m = static_cast<int>(finite.size());
  if (m > max_edges)
    throw precondition_error("instance exceeds oracle bound (" +
                             std::to_string(m) + " finite edges)");
  std::optional<Solution> best;
  std::vector<bool> removed(g.edge_count(), false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Weight w = 0;
    for (int i = 0; i < m; ++i) {
      removed[finite[i]] = (mask >> i) & 1;
      if ((mask >> i) & 1) w = w_add(w, g.edges()[finite[i]].w);
    }
    if (best && w > best->weight) continue;
    if (!detail::separated(g, removed, inst.demands, nullptr)) continue;
    Solution s;
    s.weight = w;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) s.edges.push_back(g.edges()[finite[i]].id);
    std::sort(s.edges.begin(), s.edges.end());
    if (!best || solution_less(s, *best)) best = s;
  }
  return best;
}

// The reference oracle. Subset enumeration when the instance is small
// enough, branch and bound otherwise.
inline Solution oracle_min_multicut(const Instance& inst,
                                    int max_edges = kOracleMaxEdges) {
  int finite = 0;
  for (const Edge& e : inst.edges)
    if (!is_inf(e.w)) ++finite;
  std::optional<Solution> best;
  if (finite <= max_edges)
    best = multicut_enumerate(inst, max_edges);
  else
    best = multicut_branch_and_bound(inst, inst.demands);
  if (!best) throw infeasible_error("no finite multicut");
  return *best;
}

// Every minimum multicut, sorted by edge list. Enumeration only.
inline std::vector<Solution> all_min_multicuts(const Instance& inst,
                                               int max_edges = kOracleMaxEdges) {
  GraphView g = GraphView::of(inst);
  std::vector<int> finite;
  for (int i = 0; i < g.edge_count(); ++i)
    if (!is_inf(g.edges()[i].w)) finite.push_back(i);
  int m = static_cast<int>(finite.size());
  if (m > max_edges)
    throw precondition_error("instance exceeds oracle bound");
  Weight best = kInfWeight;
  std::vector<Solution> out;
  std::vector<bool> removed(g.edge_count(), false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Weight w = 0;
    for (int i = 0; i < m; ++i) {
      removed[finite[i]] = (mask >> i) & 1;
      if ((mask >> i) & 1) w = w_add(w, g.edges()[finite[i]].w);
    }
    if (w > best) continue;
    if (!detail::separated(g, removed, inst.demands, nullptr)) continue;
    Solution s;
    s.weight = w;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) s.edges.push_back(g.edges()[finite[i]].id);
    std::sort(s.edges.begin(), s.edges.end());
    if (w < best) {
      best = w;
      out.clear();
    }
    out.push_back(s);
  }
  if (out.empty()) throw infeasible_error("no finite multicut");
  std::sort(out.begin(), out.end(),
            [](const Solution& a, const Solution& b) { return a.edges < b.edges; });
  return out;
}

}  // namespace multicut
