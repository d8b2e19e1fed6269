#pragma once

// Combinatorial drawings: crossing-pair bookkeeping, crossed faces of the
// planar remainder, and exact minimum-crossing drawings for tiny graphs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/embedding.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"

namespace multicut {

struct Drawing {
  std::vector<std::pair<EdgeId, EdgeId>> crossing_pairs;  // normalized a < b

  std::vector<EdgeId> e_cr() const {
    std::set<EdgeId> s;
    for (auto [a, b] : crossing_pairs) {
      s.insert(a);
      s.insert(b);
    }
    return {s.begin(), s.end()};
  }

  int cr_bar() const { return static_cast<int>(e_cr().size()); }
};

inline Drawing drawing_of(const Instance& inst) {
  Drawing d;
  d.crossing_pairs = inst.crossings;
  for (auto [a, b] : d.crossing_pairs) {
    const Edge& e1 = inst.edge_by_id(a);
    const Edge& e2 = inst.edge_by_id(b);
    if (e1.touches(e2.u) || e1.touches(e2.v))
      throw precondition_error("crossing edges share an endpoint");
  }
  return d;
}

struct CrossedFaces {
  std::vector<int> f_star;  // region ids of the G' embedding, sorted
  std::map<std::pair<EdgeId, EdgeId>, int> pair_face;

  bool contains(int region) const {
    return std::binary_search(f_star.begin(), f_star.end(), region);
  }
};

// Faces of G' = G minus E_cr that contain a crossing pair. Each pair is
// placed in the lowest-id region incident to all four endpoints; a pair
// with no common region signals an inconsistent annotation.
inline CrossedFaces crossed_faces(const Instance& inst, const Drawing& drawing,
                                  const Embedding& g_prime) {
  CrossedFaces out;
  auto region_verts = g_prime.region_vertex_sets();
  std::set<int> regions;
  for (auto [a, b] : drawing.crossing_pairs) {
    for (const Edge& e : g_prime.edges)
      check(e.id != a && e.id != b,
            "crossing edge present in planar remainder");
    const Edge& e1 = inst.edge_by_id(a);
    const Edge& e2 = inst.edge_by_id(b);
    VSet need = vbit(e1.u) | vbit(e1.v) | vbit(e2.u) | vbit(e2.v);
    int found = -1;
    for (int r = 0; r < g_prime.region_count && found < 0; ++r)
      if ((region_verts[r] & need) == need) found = r;
    if (found < 0)
      throw precondition_error("crossing pair not embeddable in any face");
    out.pair_face[{a, b}] = found;
    regions.insert(found);
  }
  out.f_star.assign(regions.begin(), regions.end());
  return out;
}

namespace detail {

// Replace a crossing of two edges by a degree-4 dummy vertex.
struct CrossingOp {
  EdgeId a, b;  // original edge ids, a < b
};

// Applies ops to the instance graph: each op subdivides the current curves
// of its two original edges at a new vertex. `order[e]` fixes the order of
// multiple crossings along original edge e.
inline std::optional<GraphView> planarized_by_ops(
    const Instance& inst, const std::vector<CrossingOp>& ops,
    const std::map<EdgeId, std::vector<int>>& order) {
  // Each original edge becomes a chain of segments between dummy vertices.
  int next_vertex = inst.n;
  std::map<EdgeId, std::vector<VertexId>> chain;  // interior dummies, in order
  std::vector<VertexId> op_vertex(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) op_vertex[i] = next_vertex++;
  for (const auto& [eid, op_idxs] : order) {
    for (int oi : op_idxs) chain[eid].push_back(op_vertex[oi]);
  }
  std::vector<Edge> edges;
  EdgeId next_eid = 0;
  for (const Edge& e : inst.edges) {
    auto it = chain.find(e.id);
    if (it == chain.end()) {
      edges.push_back(Edge{e.u, e.v, 1, next_eid++});
      continue;
    }
    VertexId prev = e.u;
    for (VertexId mid : it->second) {
      edges.push_back(Edge{std::min(prev, mid), std::max(prev, mid), 1,
                           next_eid++});
      prev = mid;
    }
    edges.push_back(
        Edge{std::min(prev, e.v), std::max(prev, e.v), 1, next_eid++});
  }
  VSet verts = 0;
  for (VertexId v = 0; v < next_vertex; ++v) verts |= vbit(v);
  if (next_vertex > 64) return std::nullopt;
  GraphView g(next_vertex, edges, verts);
  if (!is_planar(g)) return std::nullopt;
  return g;
}

inline void op_orders(const std::vector<CrossingOp>& ops,
                      std::vector<std::map<EdgeId, std::vector<int>>>* out) {
  // Group op indices per original edge, then take all permutations of each
  // group (orders of crossings along one edge matter).
  std::map<EdgeId, std::vector<int>> groups;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    groups[ops[i].a].push_back(static_cast<int>(i));
    groups[ops[i].b].push_back(static_cast<int>(i));
  }
  std::vector<std::map<EdgeId, std::vector<int>>> acc{{}};
  for (auto& [eid, idxs] : groups) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p = idxs;
    std::sort(p.begin(), p.end());
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::map<EdgeId, std::vector<int>>> next;
    for (const auto& partial : acc)
      for (const auto& perm : perms) {
        auto m = partial;
        m[eid] = perm;
        next.push_back(std::move(m));
      }
    acc = std::move(next);
  }
  *out = std::move(acc);
}

}  // namespace detail

inline constexpr int kTinyDrawMaxN = 8;
inline constexpr int kTinyDrawMaxCr = 3;

// Exact minimum-crossing drawing for tiny graphs: enumerate sets of k
// crossing operations (pairs of distinct non-adjacent edges, each pair at
// most once, per the structure of some optimal drawing) for k = 0, 1, ...
// and accept the first whose dummy-vertex replacement graph is planar.
inline std::optional<Drawing> tiny_min_crossing_drawing(const Instance& inst,
                                                        int max_cr) {
  if (vset_size(inst.vertex_set()) > kTinyDrawMaxN)
    throw precondition_error("graph too large for tiny drawing search");
  if (max_cr > kTinyDrawMaxCr)
    throw precondition_error("crossing bound too large for drawing search");
  int n = vset_size(inst.vertex_set());
  int m = static_cast<int>(inst.edges.size());
  std::vector<std::pair<EdgeId, EdgeId>> pairs;
  for (std::size_t i = 0; i < inst.edges.size(); ++i)
    for (std::size_t j = i + 1; j < inst.edges.size(); ++j) {
      const Edge& a = inst.edges[i];
      const Edge& b = inst.edges[j];
      if (a.touches(b.u) || a.touches(b.v)) continue;
      pairs.emplace_back(a.id, b.id);
    }
  for (int k = 0; k <= max_cr; ++k) {
    if (n >= 3 && m > 3 * n - 6 + k) continue;  // Euler bound with k dummies
    // All k-subsets of candidate pairs, lexicographically.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > static_cast<int>(pairs.size()) && k > 0) continue;
    while (true) {
      std::vector<detail::CrossingOp> ops;
      for (int i : idx) ops.push_back({pairs[i].first, pairs[i].second});
      std::vector<std::map<EdgeId, std::vector<int>>> orders;
      detail::op_orders(ops, &orders);
      for (const auto& order : orders) {
        if (detail::planarized_by_ops(inst, ops, order)) {
          Drawing d;
          for (const auto& op : ops) d.crossing_pairs.emplace_back(op.a, op.b);
          std::sort(d.crossing_pairs.begin(), d.crossing_pairs.end());
          return d;
        }
      }
      if (k == 0) break;
      int j = k - 1;
      while (j >= 0 && idx[j] == static_cast<int>(pairs.size()) - k + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace multicut
