#pragma once

// Combinatorial embeddings. Planarity is decided by incremental edge
// insertion with backtracking over face and corner choices; the output is
// a rotation system, faces are always re-derived from it. Non-planar
// graphs yield a Kuratowski-subdivision witness by greedy edge deletion.
//
// Face convention: the successor of dart d in its face walk is the
// rotation successor of rev(d) at head(d). A face walk keeps its face on
// a fixed side, so each dart lies on exactly one walk.
//
// Faces vs regions: every walk is its own region except that the
// designated outer walks of all connected components are merged into
// region 0, which also hosts the isolated vertices. This realizes a
// side-by-side drawing of the components and makes Euler's formula
// n - m + f = 1 + c hold with f counting regions.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"

namespace multicut {

struct Embedding {
  int n = 0;
  std::vector<Edge> edges;
  VSet verts = 0;
  std::vector<std::vector<int>> rot;  // darts leaving v, in cyclic order

  // Derived from rot.
  std::vector<std::vector<int>> walks;
  std::vector<int> walk_of_dart;
  std::vector<int> region_of_walk;
  std::vector<std::vector<int>> region_walks;  // region id -> walk ids
  int region_count = 0;                        // region 0 is outer

  VertexId dart_tail(int d) const {
    const Edge& e = edges[d >> 1];
    return (d & 1) ? e.v : e.u;
  }
  VertexId dart_head(int d) const {
    const Edge& e = edges[d >> 1];
    return (d & 1) ? e.u : e.v;
  }
  int edge_of_dart(int d) const { return d >> 1; }

  int next_in_face(int d) const {
    VertexId h = dart_head(d);
    const std::vector<int>& r = rot[h];
    int rd = d ^ 1;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] == rd) return r[(i + 1) % r.size()];
    throw internal_error("dart missing from rotation");
  }

  // Region on the left of the edge traversed u -> v, and v -> u.
  int left_region(int edge_index) const {
    return region_of_walk[walk_of_dart[2 * edge_index]];
  }
  int right_region(int edge_index) const {
    return region_of_walk[walk_of_dart[2 * edge_index + 1]];
  }

  std::vector<VSet> region_vertex_sets() const {
    std::vector<VSet> out(region_count, 0);
    for (std::size_t w = 0; w < walks.size(); ++w)
      for (int d : walks[w]) out[region_of_walk[w]] |= vbit(dart_tail(d));
    VSet touched = 0;
    for (const Edge& e : edges) touched |= vbit(e.u) | vbit(e.v);
    out[0] |= verts & ~touched;  // isolated vertices live in the outer region
    return out;
  }

  int face_count() const { return region_count; }

  void derive_faces() {
    int m = static_cast<int>(edges.size());
    walks.clear();
    walk_of_dart.assign(2 * m, -1);
    for (int d = 0; d < 2 * m; ++d) {
      if (walk_of_dart[d] >= 0) continue;
      int wid = static_cast<int>(walks.size());
      std::vector<int> walk;
      int cur = d;
      do {
        walk_of_dart[cur] = wid;
        walk.push_back(cur);
        cur = next_in_face(cur);
      } while (cur != d);
      walks.push_back(std::move(walk));
    }

    // Component labels over the embedded edge set.
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < m; ++i) {
      adj[edges[i].u].push_back(i);
      adj[edges[i].v].push_back(i);
    }
    int ncomp = 0;
    for (VertexId s = 0; s < n; ++s) {
      if (!vhas(verts, s) || comp[s] >= 0 || adj[s].empty()) continue;
      comp[s] = ncomp;
      std::vector<VertexId> stack{s};
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (int ei : adj[v]) {
          VertexId u = edges[ei].other(v);
          if (comp[u] < 0) {
            comp[u] = ncomp;
            stack.push_back(u);
          }
        }
      }
      ++ncomp;
    }

    // Euler check per component certifies the rotation system is planar.
    std::vector<int> cn(ncomp, 0), cm(ncomp, 0), cf(ncomp, 0);
    for (VertexId v = 0; v < n; ++v)
      if (vhas(verts, v) && comp[v] >= 0) ++cn[comp[v]];
    for (const Edge& e : edges) ++cm[comp[e.u]];
    std::vector<int> walk_comp(walks.size(), -1);
    for (std::size_t w = 0; w < walks.size(); ++w) {
      walk_comp[w] = comp[dart_tail(walks[w][0])];
      ++cf[walk_comp[w]];
    }
    for (int c = 0; c < ncomp; ++c)
      check(cn[c] - cm[c] + cf[c] == 2, "rotation system is not planar");

    // Outer walk per component: longest, ties to the smallest first dart.
    std::vector<int> outer(ncomp, -1);
    for (std::size_t w = 0; w < walks.size(); ++w) {
      int c = walk_comp[w];
      if (outer[c] < 0 ||
          walks[w].size() > walks[outer[c]].size() ||
          (walks[w].size() == walks[outer[c]].size() &&
           walks[w][0] < walks[outer[c]][0]))
        outer[c] = static_cast<int>(w);
    }
    region_of_walk.assign(walks.size(), -1);
    region_walks.assign(1, {});
    for (int c = 0; c < ncomp; ++c) {
      region_of_walk[outer[c]] = 0;
      region_walks[0].push_back(outer[c]);
    }
    for (std::size_t w = 0; w < walks.size(); ++w) {
      if (region_of_walk[w] >= 0) continue;
      region_of_walk[w] = static_cast<int>(region_walks.size());
      region_walks.push_back({static_cast<int>(w)});
    }
    region_count = static_cast<int>(region_walks.size());
  }
};

struct KuratowskiWitness {
  enum Kind { kK5, kK33 };
  Kind kind;
  std::vector<EdgeId> edges;  // a Kuratowski subdivision
};

namespace detail {

inline bool euler_bound_ok(const GraphView& g) {
  auto comp = g.components();
  std::map<int, std::pair<int, int>> nm;  // component -> (n, m)
  for (VertexId v = 0; v < g.n(); ++v)
    if (comp[v] >= 0) nm[comp[v]].first++;
  for (const Edge& e : g.edges()) nm[comp[e.u]].second++;
  for (auto& [c, p] : nm)
    if (p.first >= 3 && p.second > 3 * p.first - 6) return false;
  return true;
}

// Edge insertion order: per component in DFS discovery order so that every
// prefix after the first edge touches the already-built part.
inline std::vector<int> insertion_order(const GraphView& g) {
  std::vector<int> order;
  std::vector<bool> added(g.edge_count(), false);
  VSet visited = 0;
  std::vector<std::vector<int>> inc(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    inc[v] = g.incident(v);
    std::sort(inc[v].begin(), inc[v].end(), [&](int a, int b) {
      VertexId oa = g.edges()[a].other(v), ob = g.edges()[b].other(v);
      if (oa != ob) return oa < ob;
      return g.edges()[a].id < g.edges()[b].id;
    });
  }
  auto dfs = [&](auto&& self, VertexId v) -> void {
    visited |= vbit(v);
    for (int ei : inc[v]) {
      if (added[ei]) continue;
      VertexId u = g.edges()[ei].other(v);
      added[ei] = true;
      order.push_back(ei);
      if (!vhas(visited, u)) self(self, u);
    }
  };
  for (VertexId s = 0; s < g.n(); ++s)
    if (vhas(g.vertices(), s) && !vhas(visited, s)) dfs(dfs, s);
  return order;
}

class EmbedSearch {
 public:
  explicit EmbedSearch(const GraphView& g)
      : g_(g), rot_(g.n()), order_(insertion_order(g)) {}

  bool run() { return insert(0); }

  std::vector<std::vector<int>> take_rotation() { return std::move(rot_); }

 private:
  struct Face {
    std::vector<int> walk;
  };

  VertexId head(int d) const {
    const Edge& e = g_.edges()[d >> 1];
    return (d & 1) ? e.u : e.v;
  }

  void rot_insert_after(VertexId v, int after, int dart) {
    auto& r = rot_[v];
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it + 1, dart);
  }

  void rot_erase(VertexId v, int dart) {
    auto& r = rot_[v];
    r.erase(std::find(r.begin(), r.end(), dart));
  }

  bool insert(std::size_t k) {
    if (k == order_.size()) return true;
    int ei = order_[k];
    const Edge& e = g_.edges()[ei];
    int duv = 2 * ei, dvu = 2 * ei + 1;
    bool ua = !rot_[e.u].empty(), va = !rot_[e.v].empty();
    if (!ua && !va) {
      faces_.push_back(Face{{duv, dvu}});
      rot_[e.u] = {duv};
      rot_[e.v] = {dvu};
      if (insert(k + 1)) return true;
      faces_.pop_back();
      rot_[e.u].clear();
      rot_[e.v].clear();
      return false;
    }
    if (ua && !va) return leaf(k, e.u, e.v, duv, dvu);
    if (!ua && va) return leaf(k, e.v, e.u, dvu, dvu ^ 1);
    return chord(k, e.u, e.v, duv, dvu);
  }

  // v is new; attach the edge at a corner of u in some face.
  bool leaf(std::size_t k, VertexId u, VertexId v, int du, int dv) {
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
      std::size_t len = faces_[fi].walk.size();
      for (std::size_t p = 0; p < len; ++p) {
        if (head(faces_[fi].walk[p]) != u) continue;
        std::vector<int> old = faces_[fi].walk;
        rot_insert_after(u, old[p] ^ 1, du);
        rot_[v] = {dv};
        faces_[fi].walk.insert(faces_[fi].walk.begin() + p + 1, {du, dv});
        if (insert(k + 1)) return true;
        faces_[fi].walk = old;
        rot_erase(u, du);
        rot_[v].clear();
      }
    }
    return false;
  }

  // Both endpoints attached; the edge splits a face that has corners of
  // both u and v.
  bool chord(std::size_t k, VertexId u, VertexId v, int du, int dv) {
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
      std::size_t len = faces_[fi].walk.size();
      for (std::size_t p = 0; p < len; ++p) {
        if (head(faces_[fi].walk[p]) != u) continue;
        for (std::size_t q = 0; q < len; ++q) {
          if (head(faces_[fi].walk[q]) != v) continue;
          std::vector<int> old = faces_[fi].walk;
          std::vector<int> w1{du}, w2{dv};
          for (std::size_t i = (q + 1) % len;; i = (i + 1) % len) {
            w1.push_back(old[i]);
            if (i == p) break;
          }
          for (std::size_t i = (p + 1) % len;; i = (i + 1) % len) {
            w2.push_back(old[i]);
            if (i == q) break;
          }
          rot_insert_after(u, old[p] ^ 1, du);
          rot_insert_after(v, old[q] ^ 1, dv);
          faces_[fi].walk = std::move(w1);
          faces_.push_back(Face{std::move(w2)});
          if (insert(k + 1)) return true;
          faces_.pop_back();
          faces_[fi].walk = old;
          rot_erase(u, du);
          rot_erase(v, dv);
        }
      }
    }
    return false;
  }

  const GraphView& g_;
  std::vector<std::vector<int>> rot_;
  std::vector<Face> faces_;
  std::vector<int> order_;
};

}  // namespace detail

inline std::optional<Embedding> try_planar_embed(const GraphView& g) {
  if (!detail::euler_bound_ok(g)) return std::nullopt;
  detail::EmbedSearch search(g);
  if (!search.run()) return std::nullopt;
  Embedding emb;
  emb.n = g.n();
  emb.edges = g.edges();
  emb.verts = g.vertices();
  emb.rot = search.take_rotation();
  emb.derive_faces();
  return emb;
}

inline bool is_planar(const GraphView& g) {
  return try_planar_embed(g).has_value();
}

// An edge-minimal non-planar subgraph is exactly a Kuratowski subdivision.
inline KuratowskiWitness kuratowski_witness(const GraphView& g) {
  std::vector<Edge> cur = g.edges();
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::vector<Edge> candidate = cur;
      candidate.erase(candidate.begin() + i);
      GraphView sub(g.n(), candidate, g.vertices());
      if (!is_planar(sub)) {
        cur = std::move(candidate);
        shrunk = true;
        break;
      }
    }
  }
  KuratowskiWitness w;
  std::vector<int> deg(g.n(), 0);
  for (const Edge& e : cur) {
    ++deg[e.u];
    ++deg[e.v];
    w.edges.push_back(e.id);
  }
  int branch4 = 0;
  for (int d : deg) branch4 += (d == 4);
  w.kind = (branch4 == 5) ? KuratowskiWitness::kK5 : KuratowskiWitness::kK33;
  std::sort(w.edges.begin(), w.edges.end());
  return w;
}

struct PlanarityResult {
  std::optional<Embedding> embedding;
  std::optional<KuratowskiWitness> witness;
  bool planar() const { return embedding.has_value(); }
};

inline PlanarityResult planarity_check(const GraphView& g) {
  PlanarityResult r;
  r.embedding = try_planar_embed(g);
  if (!r.embedding) r.witness = kuratowski_witness(g);
  return r;
}

// Embedding fixed by explicit rotations (`r` records). Every vertex with
// positive degree in the view must be covered; planarity of the rotation
// system is certified by the Euler check in derive_faces.
inline Embedding embed_with_rotations(
    const GraphView& g,
    const std::map<VertexId, std::vector<VertexId>>& rotations) {
  Embedding emb;
  emb.n = g.n();
  emb.edges = g.edges();
  emb.verts = g.vertices();
  emb.rot.assign(g.n(), {});
  for (VertexId v = 0; v < g.n(); ++v) {
    if (g.incident(v).empty()) continue;
    auto it = rotations.find(v);
    if (it == rotations.end())
      throw precondition_error("rotation data missing for vertex " +
                               std::to_string(v));
    if (it->second.size() != g.incident(v).size())
      throw precondition_error("rotation at vertex " + std::to_string(v) +
                               " does not match its degree");
    for (VertexId u : it->second) {
      int found = -1;
      for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        if ((e.u == v && e.v == u) || (e.v == v && e.u == u)) found = i;
      }
      if (found < 0)
        throw precondition_error("rotation at vertex " + std::to_string(v) +
                                 " lists a non-neighbor");
      emb.rot[v].push_back(2 * found + (g.edges()[found].u == v ? 0 : 1));
    }
  }
  try {
    emb.derive_faces();
  } catch (const internal_error&) {
    throw precondition_error("given rotation system is not planar");
  }
  return emb;
}

inline Embedding canonical_embedding(
    const GraphView& g,
    const std::map<VertexId, std::vector<VertexId>>& rotations = {}) {
  if (!rotations.empty()) return embed_with_rotations(g, rotations);
  auto emb = try_planar_embed(g);
  if (!emb) throw precondition_error("graph is not planar");
  return *emb;
}

// Dual graph over the embedding regions: one dual vertex per region, one
// dual edge per primal edge (a loop when both sides are the same region).
struct DualGraph {
  struct DualEdge {
    int f1, f2;
    EdgeId primal;
  };
  int face_count = 0;
  std::vector<DualEdge> edges;
};

inline DualGraph faces_and_dual(const Embedding& emb) {
  DualGraph d;
  d.face_count = emb.region_count;
  for (std::size_t i = 0; i < emb.edges.size(); ++i)
    d.edges.push_back(DualGraph::DualEdge{emb.left_region(static_cast<int>(i)),
                                          emb.right_region(static_cast<int>(i)),
                                          emb.edges[i].id});
  return d;
}

}  // namespace multicut
