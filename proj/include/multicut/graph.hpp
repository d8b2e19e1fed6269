#pragma once

// Lightweight adjacency view over a subset of an instance's edges.
// Vertex ids refer to the instance universe; the view restricts which
// edges (and implicitly which vertices) participate.

#include <algorithm>
#include <deque>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/instance.hpp"

namespace multicut {

class GraphView {
 public:
  GraphView() = default;

  GraphView(int n, std::vector<Edge> edges, VSet vertices)
      : n_(n), edges_(std::move(edges)), vertices_(vertices) {
    adj_.assign(n_, {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      const Edge& e = edges_[i];
      adj_[e.u].push_back(i);
      adj_[e.v].push_back(i);
    }
  }

  static GraphView of(const Instance& inst) {
    return GraphView(inst.n, inst.edges, inst.vertex_set());
  }

  // The planar remainder: instance edges minus the given set.
  static GraphView of_without(const Instance& inst,
                              const std::vector<EdgeId>& drop) {
    std::vector<Edge> keep;
    for (const Edge& e : inst.edges)
      if (std::find(drop.begin(), drop.end(), e.id) == drop.end())
        keep.push_back(e);
    return GraphView(inst.n, std::move(keep), inst.vertex_set());
  }

  int n() const { return n_; }
  VSet vertices() const { return vertices_; }
  int vertex_count() const { return vset_size(vertices_); }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& incident(VertexId v) const { return adj_[v]; }

  bool has_edge_id(EdgeId id) const {
    for (const Edge& e : edges_)
      if (e.id == id) return true;
    return false;
  }

  // Component label per vertex (-1 for vertices outside the view), skipping
  // edges in `removed` (indices into edges()).
  std::vector<int> components(const std::vector<bool>& removed = {}) const {
    std::vector<int> comp(n_, -1);
    int c = 0;
    for (VertexId s = 0; s < n_; ++s) {
      if (!vhas(vertices_, s) || comp[s] >= 0) continue;
      comp[s] = c;
      std::deque<VertexId> q{s};
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (int ei : adj_[v]) {
          if (!removed.empty() && removed[ei]) continue;
          VertexId u = edges_[ei].other(v);
          if (comp[u] < 0) {
            comp[u] = c;
            q.push_back(u);
          }
        }
      }
      ++c;
    }
    return comp;
  }

  int component_count() const {
    auto comp = components();
    int c = 0;
    for (int x : comp) c = std::max(c, x + 1);
    return c;
  }

  bool is_connected() const {
    return vertex_count() <= 1 || component_count() == 1;
  }

  // Number of connected components of the induced subgraph on `sub`.
  int induced_component_count(VSet sub) const {
    VSet seen = 0;
    int c = 0;
    for (VertexId s : vset_to_list(sub & vertices_)) {
      if (vhas(seen, s)) continue;
      ++c;
      std::deque<VertexId> q{s};
      seen |= vbit(s);
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (int ei : adj_[v]) {
          VertexId u = edges_[ei].other(v);
          if (vhas(sub, u) && !vhas(seen, u)) {
            seen |= vbit(u);
            q.push_back(u);
          }
        }
      }
    }
    return c;
  }

  // Edges of the view with exactly one endpoint in `s` (delta_G(s)).
  std::vector<EdgeId> boundary(VSet s) const {
    std::vector<EdgeId> out;
    for (const Edge& e : edges_)
      if (vhas(s, e.u) != vhas(s, e.v)) out.push_back(e.id);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Edges with one endpoint in a and the other in b (delta_G(a, b)).
  std::vector<EdgeId> between(VSet a, VSet b) const {
    std::vector<EdgeId> out;
    for (const Edge& e : edges_) {
      bool au = vhas(a, e.u), av = vhas(a, e.v);
      bool bu = vhas(b, e.u), bv = vhas(b, e.v);
      if ((au && bv) || (av && bu)) out.push_back(e.id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  VSet vertices_ = 0;
  std::vector<std::vector<int>> adj_;
};

}  // namespace multicut
