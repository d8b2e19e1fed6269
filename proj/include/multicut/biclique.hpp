#pragma once

// Extended-biclique distance of a demand graph: the minimum number of
// vertices whose deletion leaves a complete bipartite graph plus isolated
// vertices. Exhaustive over deletion sets in increasing size; demand graphs
// stay tiny, exactness is the point.

#include <algorithm>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/instance.hpp"

namespace multicut {

struct BicliqueDecomposition {
  std::vector<VertexId> b1, b2, isolated, x;
  int mu = 0;
};

namespace detail {

// Checks whether the demand graph restricted to `keep` is a biclique plus
// isolated vertices; fills the side/isolated split on success.
inline bool biclique_split(const std::vector<DemandPair>& demands, VSet keep,
                           std::vector<VertexId>* b1, std::vector<VertexId>* b2,
                           std::vector<VertexId>* iso) {
  std::vector<DemandPair> kept;
  VSet nonisolated = 0;
  for (const DemandPair& d : demands) {
    if (!vhas(keep, d.first) || !vhas(keep, d.second)) continue;
    kept.push_back(d);
    nonisolated |= vbit(d.first) | vbit(d.second);
  }
  // 2-color the non-isolated part; sides must be independent.
  std::vector<int> side(64, -1);
  auto nodes = vset_to_list(nonisolated);
  for (VertexId s : nodes) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (const DemandPair& d : kept) {
        VertexId u;
        if (d.first == v)
          u = d.second;
        else if (d.second == v)
          u = d.first;
        else
          continue;
        if (side[u] < 0) {
          side[u] = 1 - side[v];
          stack.push_back(u);
        } else if (side[u] == side[v]) {
          return false;
        }
      }
    }
  }
  // Every cross pair must actually be an edge.
  VSet s0 = 0, s1 = 0;
  for (VertexId v : nodes) (side[v] == 0 ? s0 : s1) |= vbit(v);
  std::size_t expected = static_cast<std::size_t>(vset_size(s0)) *
                         static_cast<std::size_t>(vset_size(s1));
  if (kept.size() != expected) return false;
  // Canonical sides: the side holding the lowest non-isolated vertex is B1.
  if (!nodes.empty() && !vhas(s0, nodes.front())) std::swap(s0, s1);
  if (b1) *b1 = vset_to_list(s0);
  if (b2) *b2 = vset_to_list(s1);
  if (iso) *iso = vset_to_list(keep & ~nonisolated);
  return true;
}

inline void subsets_of_size(const std::vector<VertexId>& pool, int k,
                            std::vector<VSet>* out) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  int n = static_cast<int>(pool.size());
  if (k > n) return;
  while (true) {
    VSet s = 0;
    for (int i : idx) s |= vbit(pool[i]);
    out->push_back(s);
    int j = k - 1;
    while (j >= 0 && idx[j] == n - k + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
  }
}

}  // namespace detail

// True iff (demand graph on verts) is already an extended biclique; used as
// the independent validity predicate in tests as well.
inline bool is_extended_biclique(const std::vector<VertexId>& verts,
                                 const std::vector<DemandPair>& demands) {
  return detail::biclique_split(demands, list_to_vset(verts), nullptr, nullptr,
                                nullptr);
}

// Minimum deletion set X; ties broken by lexicographically smallest X over
// the input vertex order (subsets of each size are generated in that order).
inline BicliqueDecomposition extended_biclique_distance(
    const std::vector<VertexId>& verts, const std::vector<DemandPair>& demands) {
  if (verts.empty()) throw precondition_error("empty demand-graph vertex set");
  VSet all = list_to_vset(verts);
  for (int k = 0; k <= static_cast<int>(verts.size()); ++k) {
    std::vector<VSet> candidates;
    detail::subsets_of_size(verts, k, &candidates);
    for (VSet x : candidates) {
      BicliqueDecomposition dec;
      if (detail::biclique_split(demands, all & ~x, &dec.b1, &dec.b2,
                                 &dec.isolated)) {
        dec.x = vset_to_list(x);
        dec.mu = k;
        return dec;
      }
    }
  }
  throw internal_error("biclique search fell through");  // X = V always works
}

inline BicliqueDecomposition extended_biclique_distance(const Instance& inst) {
  return extended_biclique_distance(inst.terminals, inst.demands);
}

}  // namespace multicut
