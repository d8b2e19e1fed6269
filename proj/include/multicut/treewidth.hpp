#pragma once

// Exact treewidth by elimination-ordering search (iterative deepening with
// memoized dead states), and r-domination checking. Both operate on plain
// adjacency lists; they are measurement instruments, not solver internals.

#include <algorithm>
#include <set>
#include <vector>

#include "multicut/base.hpp"

namespace multicut {

inline constexpr int kTreewidthMaxN = 20;

namespace detail {

// Vertices adjacent to v through paths whose internal vertices are all
// eliminated; their count is v's degree at elimination time.
inline int elimination_degree(const std::vector<std::uint32_t>& adj,
                              std::uint32_t eliminated, int v) {
  std::uint32_t seen = std::uint32_t{1} << v;
  std::uint32_t frontier = adj[v] & ~seen;
  std::uint32_t reached = 0;
  while (frontier) {
    int u = __builtin_ctz(frontier);
    frontier &= frontier - 1;
    if (seen & (std::uint32_t{1} << u)) continue;
    seen |= std::uint32_t{1} << u;
    if (eliminated & (std::uint32_t{1} << u))
      frontier |= adj[u] & ~seen;
    else
      reached |= std::uint32_t{1} << u;
  }
  return __builtin_popcount(reached);
}

inline bool eliminable(const std::vector<std::uint32_t>& adj, int n, int k,
                       std::uint32_t eliminated, std::set<std::uint32_t>* dead) {
  if (__builtin_popcount(eliminated) == n) return true;
  if (dead->count(eliminated)) return false;
  for (int v = 0; v < n; ++v) {
    if (eliminated & (std::uint32_t{1} << v)) continue;
    if (elimination_degree(adj, eliminated, v) <= k &&
        eliminable(adj, n, k, eliminated | (std::uint32_t{1} << v), dead))
      return true;
  }
  dead->insert(eliminated);
  return false;
}

}  // namespace detail

// Exact treewidth; per-component maximum. Vertices with no incident edges
// contribute components of treewidth 0; an empty graph has treewidth 0.
inline int treewidth_exact(const std::vector<std::vector<int>>& adjacency) {
  int n = static_cast<int>(adjacency.size());
  if (n > kTreewidthMaxN)
    throw precondition_error("graph too large for exact treewidth");
  // Component split.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adjacency[v])
        if (comp[u] < 0) {
          comp[u] = ncomp;
          stack.push_back(u);
        }
    }
    ++ncomp;
  }
  int best = 0;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (comp[v] == c) verts.push_back(v);
    int cn = static_cast<int>(verts.size());
    std::vector<int> local(n, -1);
    for (int i = 0; i < cn; ++i) local[verts[i]] = i;
    std::vector<std::uint32_t> adj(cn, 0);
    for (int v : verts)
      for (int u : adjacency[v])
        if (u != v) adj[local[v]] |= std::uint32_t{1} << local[u];
    for (int k = 0; k < cn; ++k) {
      std::set<std::uint32_t> dead;
      if (detail::eliminable(adj, cn, k, 0, &dead)) {
        best = std::max(best, k);
        break;
      }
    }
  }
  return best;
}

// True iff every vertex has a path of length <= r to the set A.
inline bool dominating_check(const std::vector<std::vector<int>>& adjacency,
                             const std::vector<int>& a, int r) {
  int n = static_cast<int>(adjacency.size());
  std::vector<int> dist(n, -1);
  std::vector<int> queue;
  for (int v : a)
    if (dist[v] < 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (int u : adjacency[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  for (int v = 0; v < n; ++v)
    if (dist[v] < 0 || dist[v] > r) return false;
  return true;
}

}  // namespace multicut
