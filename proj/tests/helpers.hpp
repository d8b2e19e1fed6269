#pragma once

// Shared fixtures and independent test oracles.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "multicut/multicut.hpp"

namespace mt {

using namespace multicut;

inline Instance make_instance(int n,
                              std::vector<std::pair<int, int>> edges,
                              std::vector<int> terminals = {},
                              std::vector<std::pair<int, int>> demands = {},
                              std::vector<Weight> weights = {}) {
  Instance inst;
  inst.n = n;
  for (VertexId v = 0; v < n; ++v) inst.vertices.push_back(v);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u > v) std::swap(u, v);
    Weight w = i < weights.size() ? weights[i] : 1;
    inst.edges.push_back(Edge{u, v, w, static_cast<EdgeId>(i)});
  }
  inst.terminals = std::move(terminals);
  std::sort(inst.terminals.begin(), inst.terminals.end());
  for (auto [a, b] : demands)
    inst.demands.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(inst.demands.begin(), inst.demands.end());
  return inst;
}

inline std::vector<std::pair<int, int>> path_edges(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
  return out;
}

inline std::vector<std::pair<int, int>> cycle_edges(int n) {
  auto out = path_edges(n);
  out.emplace_back(0, n - 1);
  return out;
}

inline std::vector<std::pair<int, int>> complete_edges(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// Star with center 0 and leaves 1..n-1.
inline std::vector<std::pair<int, int>> star_edges(int leaves) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= leaves; ++i) out.emplace_back(0, i);
  return out;
}

inline std::vector<std::pair<int, int>> grid_edges(int rows, int cols) {
  std::vector<std::pair<int, int>> out;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) out.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) out.emplace_back(id(r, c), id(r + 1, c));
    }
  return out;
}

// Independent oracle: minimum cut value between two vertex sets by
// enumerating all edge subsets up to the answer size.
inline int brute_min_cut(const GraphView& g, VSet y1, VSet y2) {
  int m = g.edge_count();
  for (int k = 0; k <= m; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<bool> removed(m, false);
      for (int i : idx) removed[i] = true;
      auto comp = g.components(removed);
      bool separated = true;
      for (VertexId a : vset_to_list(y1 & g.vertices()))
        for (VertexId b : vset_to_list(y2 & g.vertices()))
          if (comp[a] == comp[b]) separated = false;
      if (separated) return k;
      if (k == 0) break;
      int j = k - 1;
      while (j >= 0 && idx[j] == m - k + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return m;
}

// Independent oracle: the maximum set containing y1, avoiding y2, with
// boundary size lambda(y1, y2), by enumerating all vertex sets.
inline VSet brute_relevant_set(const GraphView& g, VSet y1, VSet y2) {
  int lam = brute_min_cut(g, y1, y2);
  VSet all = g.vertices();
  std::vector<VertexId> free_verts = vset_to_list(all & ~(y1 | y2));
  int k = static_cast<int>(free_verts.size());
  VSet best = 0;
  int best_size = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    VSet s = y1;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1) s |= vbit(free_verts[i]);
    if (static_cast<int>(g.boundary(s).size()) != lam) continue;
    if (vset_size(s) > best_size) {
      best = s;
      best_size = vset_size(s);
    }
  }
  return best;
}

// Deterministic connected random graph on n vertices.
inline Instance random_connected(Rng& rng, int n, int extra_edges) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> used;
  std::vector<int> order;
  for (int v = 0; v < n; ++v) order.push_back(v);
  rng.shuffle(order);
  for (int i = 1; i < n; ++i) {
    int u = order[rng.below(i)];
    int v = order[i];
    auto e = std::minmax(u, v);
    edges.emplace_back(e.first, e.second);
    used.insert(e);
  }
  int guard = 20 * extra_edges + 20;
  while (extra_edges > 0 && guard-- > 0) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    if (u == v) continue;
    auto e = std::minmax(u, v);
    if (used.count(e)) continue;
    used.insert(e);
    edges.push_back(e);
    --extra_edges;
  }
  return make_instance(n, edges);
}

}  // namespace mt
