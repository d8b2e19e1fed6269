#pragma once

// Flow/cut primitives on graph views: multicut verification, cardinality
// min cuts (lambda), relevant sets, and cut-distance.

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"

namespace multicut {

// True iff every demand pair lies in distinct components of G minus S.
inline bool verify_multicut(const Instance& inst,
                            const std::vector<EdgeId>& cut) {
  GraphView g = GraphView::of(inst);
  std::vector<bool> removed(g.edge_count(), false);
  for (EdgeId id : cut) {
    bool found = false;
    for (int i = 0; i < g.edge_count(); ++i)
      if (g.edges()[i].id == id) {
        removed[i] = true;
        found = true;
        break;
      }
    if (!found)
      throw precondition_error("unknown edge id " + std::to_string(id) +
                               " in cut");
  }
  auto comp = g.components(removed);
  for (const DemandPair& d : inst.demands)
    if (comp[d.first] == comp[d.second]) return false;
  return true;
}

// A cardinality cut query on a graph view (G or G0).
struct CutQuery {
  const GraphView& graph;
  VSet y1, y2;  // disjoint, nonempty
};

struct CutResult {
  int value = 0;
  std::vector<EdgeId> cut;   // a minimum cut, sorted by edge id
  VSet source_side = 0;      // contains Y1, excludes Y2, boundary = cut
};

namespace detail {

// Unit-capacity max flow between contracted terminal sets via BFS
// augmentation. Residual state is kept per edge as a -1/0/+1 flow value.
struct UnitFlow {
  const GraphView& g;
  VSet y1, y2;
  std::vector<int> flow;  // +1 along u->v, -1 along v->u, 0 idle

  UnitFlow(const GraphView& gv, VSet a, VSet b)
      : g(gv), y1(a), y2(b), flow(gv.edge_count(), 0) {}

  // Residual capacity of edge index ei in direction from -> to.
  bool residual(int ei, VertexId from) const {
    const Edge& e = g.edges()[ei];
    int f = flow[ei];
    if (from == e.u) return f < 1;
    return f > -1;
  }

  void push(int ei, VertexId from) {
    const Edge& e = g.edges()[ei];
    flow[ei] += (from == e.u) ? 1 : -1;
  }

  bool augment() {
    std::vector<int> via_edge(g.n(), -1);
    std::vector<VertexId> via_from(g.n(), -1);
    VSet seen = y1;
    std::deque<VertexId> q;
    for (VertexId v : vset_to_list(y1)) q.push_back(v);
    VertexId hit = -1;
    while (!q.empty() && hit < 0) {
      VertexId v = q.front();
      q.pop_front();
      for (int ei : g.incident(v)) {
        if (!residual(ei, v)) continue;
        VertexId u = g.edges()[ei].other(v);
        if (vhas(seen, u)) continue;
        seen |= vbit(u);
        via_edge[u] = ei;
        via_from[u] = v;
        if (vhas(y2, u)) {
          hit = u;
          break;
        }
        q.push_back(u);
      }
    }
    if (hit < 0) return false;
    for (VertexId v = hit; !vhas(y1, v); v = via_from[v])
      push(via_edge[v], via_from[v]);
    return true;
  }

  int run() {
    int value = 0;
    while (augment()) ++value;
    return value;
  }

  // Vertices reachable from Y1 in the residual network.
  VSet forward_reachable() const {
    VSet seen = y1;
    std::deque<VertexId> q;
    for (VertexId v : vset_to_list(y1)) q.push_back(v);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (int ei : g.incident(v)) {
        if (!residual(ei, v)) continue;
        VertexId u = g.edges()[ei].other(v);
        if (!vhas(seen, u)) {
          seen |= vbit(u);
          q.push_back(u);
        }
      }
    }
    return seen;
  }

  // Vertices from which Y2 is reachable in the residual network.
  VSet backward_reachable() const {
    VSet seen = y2;
    std::deque<VertexId> q;
    for (VertexId v : vset_to_list(y2)) q.push_back(v);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (int ei : g.incident(v)) {
        VertexId u = g.edges()[ei].other(v);
        // u reaches v iff the residual allows u -> v.
        if (!residual(ei, u)) continue;
        if (!vhas(seen, u)) {
          seen |= vbit(u);
          q.push_back(u);
        }
      }
    }
    return seen;
  }
};

}  // namespace detail

// lambda_G(Y1, Y2) with a witness cut and the minimal source side.
inline CutResult min_cut(const GraphView& g, VSet y1, VSet y2) {
  if (y1 == 0 || y2 == 0 || (y1 & y2) != 0)
    throw precondition_error("min_cut requires disjoint nonempty sides");
  detail::UnitFlow f(g, y1, y2);
  CutResult r;
  r.value = f.run();
  r.source_side = f.forward_reachable() & g.vertices();
  r.cut = g.boundary(r.source_side);
  check(static_cast<int>(r.cut.size()) == r.value, "min cut boundary mismatch");
  return r;
}

inline CutResult min_cut(const CutQuery& q) {
  return min_cut(q.graph, q.y1, q.y2);
}

inline int lambda(const GraphView& g, VSet y1, VSet y2) {
  if (y1 == 0 || y2 == 0) return 0;
  return min_cut(g, y1, y2).value;
}

// The unique maximum Y3 with Y1 <= Y3, Y3 avoiding Y2 and d(Y3) =
// lambda(Y1, Y2): the complement of residual reachability to Y2.
inline VSet relevant_set(const GraphView& g, VSet y1, VSet y2) {
  if (y1 == 0 || y2 == 0 || (y1 & y2) != 0)
    throw precondition_error("relevant_set requires disjoint nonempty sides");
  if (!g.is_connected())
    throw precondition_error("relevant_set requires a connected graph");
  detail::UnitFlow f(g, y1, y2);
  int value = f.run();
  VSet y3 = g.vertices() & ~f.backward_reachable();
  check((y1 & ~y3) == 0 && (y3 & y2) == 0, "relevant set side violation");
  check(static_cast<int>(g.boundary(y3).size()) == value,
        "relevant set boundary is not minimum");
  return y3;
}

inline constexpr int kUnreachable = -1;

// Minimum number of s0 edges on any Y1-Y2 path (0/1 shortest path), or
// kUnreachable when no path exists.
inline int cut_distance(const GraphView& g, const std::vector<EdgeId>& s0,
                        VSet y1, VSet y2) {
  if (y1 == 0 || y2 == 0)
    throw precondition_error("cut_distance requires nonempty sides");
  std::vector<bool> costly(g.edge_count(), false);
  for (int i = 0; i < g.edge_count(); ++i)
    costly[i] = std::find(s0.begin(), s0.end(), g.edges()[i].id) != s0.end();
  std::vector<int> dist(g.n(), -1);
  std::deque<VertexId> q;
  for (VertexId v : vset_to_list(y1 & g.vertices())) {
    dist[v] = 0;
    q.push_back(v);
  }
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (int ei : g.incident(v)) {
      VertexId u = g.edges()[ei].other(v);
      int nd = dist[v] + (costly[ei] ? 1 : 0);
      if (dist[u] < 0 || nd < dist[u]) {
        dist[u] = nd;
        if (costly[ei])
          q.push_back(u);
        else
          q.push_front(u);
      }
    }
  }
  int best = kUnreachable;
  for (VertexId v : vset_to_list(y2 & g.vertices()))
    if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
  return best;
}

}  // namespace multicut
