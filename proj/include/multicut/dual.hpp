#pragma once

// Multicut duals as plane graphs drawn over a primal embedding, their
// face/region structure via an explicit overlay, inclusion-minimalization
// with subcubic normalization, crossed-face removal, and the exact planar
// multicut subsolver.
//
// A PlaneDual vertex lives inside one region of the primal embedding; a
// PlaneDual edge either crosses exactly one primal edge (a "real" arc,
// endpoint a on the left of the primal dart u->v), is an artificial
// zero-weight link between split copies inside one region, or is an
// enclosure loop drawn around one primal component (needed when demands
// span different components of the primal graph).

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/cuts.hpp"
#include "multicut/embedding.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"
#include "multicut/oracle.hpp"
#include "multicut/treewidth.hpp"

namespace multicut {

struct PlaneDual {
  struct CVertex {
    int host_region;            // region of the primal embedding
    bool artificial;            // introduced by normalization
    int enclose_component = -1; // primal component encircled by a loop
  };
  struct CEdge {
    int a, b;        // CVertex ids; for real arcs a is left of primal u->v
    EdgeId primal;   // crossed primal edge, -1 for artificial/enclosure
  };
  std::vector<CVertex> verts;
  std::vector<CEdge> edges;
  std::vector<std::vector<int>> rot;  // per CVertex, darts 2e / 2e+1 leaving

  int degree(int v) const { return static_cast<int>(rot[v].size()); }

  int dart_tail(int d) const {
    const CEdge& e = edges[d >> 1];
    return (d & 1) ? e.b : e.a;
  }

  std::vector<EdgeId> crossed_edges() const {
    std::vector<EdgeId> out;
    for (const CEdge& e : edges)
      if (e.primal >= 0) out.push_back(e.primal);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Compact copy without one edge (isolated vertices kept).
  PlaneDual without_edge(int drop) const {
    PlaneDual out;
    out.verts = verts;
    std::vector<int> remap(edges.size(), -1);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      if (i == drop) continue;
      remap[i] = static_cast<int>(out.edges.size());
      out.edges.push_back(edges[i]);
    }
    out.rot.assign(verts.size(), {});
    for (std::size_t v = 0; v < verts.size(); ++v)
      for (int d : rot[v])
        if ((d >> 1) != drop) out.rot[v].push_back(2 * remap[d >> 1] + (d & 1));
    return out;
  }

  PlaneDual without_isolated_vertices() const {
    PlaneDual out;
    std::vector<int> remap(verts.size(), -1);
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (rot[v].empty()) continue;
      remap[v] = static_cast<int>(out.verts.size());
      out.verts.push_back(verts[v]);
      out.rot.push_back(rot[v]);
    }
    for (const CEdge& e : edges)
      out.edges.push_back(CEdge{remap[e.a], remap[e.b], e.primal});
    return out;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(verts.size());
    for (const CEdge& e : edges)
      if (e.a != e.b) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
      }
    return adj;
  }
};

// Face/region structure of a PlaneDual over its primal embedding.
struct DualFaces {
  int region_count = 0;
  std::vector<VSet> primal_vertices;      // per C-region
  std::vector<std::vector<int>> cverts;   // per C-region, incident, sorted
  std::vector<int> region_of_primal;      // per primal vertex, -1 off-view
};

namespace detail {

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// The overlay: primal edges crossed by real arcs are subdivided at a
// crossing point, dual arcs run between crossing points and C-vertices,
// and the plane structure is fixed by the rotations derived from the
// primal embedding and the dual's own rotation system. C-regions are then
// overlay faces merged across primal (non-dual) arcs.
class Overlay {
 public:
  Overlay(const Embedding& emb, const PlaneDual& c) : emb_(emb), c_(c) {
    build();
  }

  DualFaces faces() const { return faces_; }

 private:
  struct MEdge {
    int p, q;
    bool dual_arc;
  };

  int mdart_head(int d) const {
    const MEdge& e = medges_[d >> 1];
    return (d & 1) ? e.p : e.q;
  }

  int add_medge(int p, int q, bool dual_arc) {
    medges_.push_back(MEdge{p, q, dual_arc});
    return static_cast<int>(medges_.size()) - 1;
  }

  void build() {
    int n = emb_.n;
    int m = static_cast<int>(emb_.edges.size());

    // Which primal edge is crossed by which real C-edge.
    std::vector<int> crossing_cedge(m, -1);
    std::vector<int> primal_index;  // edge id -> index in emb edges
    std::map<EdgeId, int> eid_to_index;
    for (int i = 0; i < m; ++i) eid_to_index[emb_.edges[i].id] = i;
    for (int ce = 0; ce < static_cast<int>(c_.edges.size()); ++ce) {
      EdgeId pe = c_.edges[ce].primal;
      if (pe < 0) continue;
      auto it = eid_to_index.find(pe);
      check(it != eid_to_index.end(), "dual arc crosses unknown primal edge");
      check(crossing_cedge[it->second] < 0,
            "primal edge crossed more than once");
      crossing_cedge[it->second] = ce;
    }

    // M vertex ids: primal 0..n-1, then crossing points, then C-vertices.
    std::vector<int> xid(m, -1);
    int next = n;
    for (int i = 0; i < m; ++i)
      if (crossing_cedge[i] >= 0) xid[i] = next++;
    int cbase = next;
    next += static_cast<int>(c_.verts.size());
    int nm = next;

    // M edges, with handles needed for the rotations.
    std::vector<int> primal_half_u(m, -1), primal_half_v(m, -1);
    std::vector<int> full_edge(m, -1);
    std::vector<int> dual_half_a(c_.edges.size(), -1),
        dual_half_b(c_.edges.size(), -1), art_edge(c_.edges.size(), -1);
    for (int i = 0; i < m; ++i) {
      if (crossing_cedge[i] < 0) {
        full_edge[i] = add_medge(emb_.edges[i].u, emb_.edges[i].v, false);
      } else {
        primal_half_u[i] = add_medge(emb_.edges[i].u, xid[i], false);
        primal_half_v[i] = add_medge(xid[i], emb_.edges[i].v, false);
      }
    }
    for (int ce = 0; ce < static_cast<int>(c_.edges.size()); ++ce) {
      const PlaneDual::CEdge& e = c_.edges[ce];
      if (e.primal >= 0) {
        int i = eid_to_index[e.primal];
        dual_half_a[ce] = add_medge(cbase + e.a, xid[i], true);
        dual_half_b[ce] = add_medge(xid[i], cbase + e.b, true);
      } else {
        art_edge[ce] = add_medge(cbase + e.a, cbase + e.b, true);
      }
    }

    // Rotations.
    std::vector<std::vector<int>> rot(nm);
    auto leave_dart = [&](int me, int from) {
      return 2 * me + (medges_[me].p == from ? 0 : 1);
    };
    for (VertexId v = 0; v < n; ++v) {
      for (int d : emb_.rot[v]) {
        int i = d >> 1;
        if (crossing_cedge[i] < 0) {
          rot[v].push_back(leave_dart(full_edge[i], v));
        } else {
          int half = (v == emb_.edges[i].u) ? primal_half_u[i]
                                            : primal_half_v[i];
          rot[v].push_back(leave_dart(half, v));
        }
      }
    }
    // Crossing points: [to u, to a, to v, to b] where a is the C-endpoint
    // on the left of the primal dart u -> v. Rotation lists share the
    // chirality of the primal rotation system (walks keep faces on the
    // left under the successor-of-reverse rule).
    for (int i = 0; i < m; ++i) {
      if (crossing_cedge[i] < 0) continue;
      int ce = crossing_cedge[i];
      int x = xid[i];
      rot[x] = {2 * primal_half_u[i] + 1, leave_dart(dual_half_a[ce], x),
                2 * primal_half_v[i] + 0, leave_dart(dual_half_b[ce], x)};
    }
    // C-vertices: translate their own rotations. Dart parities transfer
    // directly because the M edge for each half was created a-side first.
    for (std::size_t cv = 0; cv < c_.verts.size(); ++cv) {
      for (int cd : c_.rot[cv]) {
        int ce = cd >> 1;
        const PlaneDual::CEdge& e = c_.edges[ce];
        int md;
        if (e.primal >= 0)
          md = 2 * ((cd & 1) ? dual_half_b[ce] : dual_half_a[ce]) + (cd & 1);
        else
          md = 2 * art_edge[ce] + (cd & 1);
        rot[cbase + static_cast<int>(cv)].push_back(md);
      }
    }

    // Trace overlay faces.
    int mm = static_cast<int>(medges_.size());
    std::vector<int> rot_pos(2 * mm, -1);
    std::vector<int> rot_vertex(2 * mm, -1);
    for (int v = 0; v < nm; ++v)
      for (std::size_t i = 0; i < rot[v].size(); ++i) {
        rot_pos[rot[v][i]] = static_cast<int>(i);
        rot_vertex[rot[v][i]] = v;
      }
    auto next_in_face = [&](int d) {
      int rd = d ^ 1;
      int v = rot_vertex[rd];
      const std::vector<int>& r = rot[v];
      return r[(rot_pos[rd] + 1) % r.size()];
    };
    std::vector<int> walk_of(2 * mm, -1);
    int nwalk = 0;
    for (int d = 0; d < 2 * mm; ++d) {
      if (walk_of[d] >= 0) continue;
      int cur = d;
      do {
        walk_of[cur] = nwalk;
        cur = next_in_face(cur);
      } while (cur != d);
      ++nwalk;
    }

    // Euler per overlay component certifies the overlay is plane.
    {
      DSU comp(nm);
      for (const MEdge& e : medges_) comp.unite(e.p, e.q);
      std::map<int, std::array<int, 3>> euler;  // root -> n, m, f
      for (int v = 0; v < nm; ++v)
        if (!rot[v].empty()) euler[comp.find(v)][0]++;
      for (const MEdge& e : medges_) euler[comp.find(e.p)][1]++;
      std::vector<bool> walk_seen(nwalk, false);
      for (int d = 0; d < 2 * mm; ++d)
        if (!walk_seen[walk_of[d]]) {
          walk_seen[walk_of[d]] = true;
          euler[comp.find(mdart_head(d))][2]++;
        }
      for (auto& [root, nmf] : euler)
        check(nmf[0] - nmf[1] + nmf[2] == 2, "overlay is not plane");
    }

    // C-regions: merge overlay faces across primal arcs.
    DSU region(nwalk);
    for (int me = 0; me < mm; ++me)
      if (!medges_[me].dual_arc)
        region.unite(walk_of[2 * me], walk_of[2 * me + 1]);

    // Identify each primal component's exposed outer face, honoring
    // enclosure loops, then merge all exposures side by side. Component
    // labels include isolated vertices, matching primal_components().
    std::vector<int> pcomp(n, -1);
    std::map<int, int> isolated_inside;  // component -> inner loop walk
    {
      std::vector<std::vector<int>> adj(n);
      for (int i = 0; i < m; ++i) {
        adj[emb_.edges[i].u].push_back(i);
        adj[emb_.edges[i].v].push_back(i);
      }
      int nc = 0;
      for (VertexId s = 0; s < n; ++s) {
        if (!vhas(emb_.verts, s) || pcomp[s] >= 0) continue;
        pcomp[s] = nc;
        std::vector<VertexId> st{s};
        while (!st.empty()) {
          VertexId v = st.back();
          st.pop_back();
          for (int ei : adj[v]) {
            VertexId u = emb_.edges[ei].other(v);
            if (pcomp[u] < 0) {
              pcomp[u] = nc;
              st.push_back(u);
            }
          }
        }
        ++nc;
      }
      // Outer overlay face per primal component, from its outer walk.
      std::vector<int> top(nc, -1);
      for (int w : emb_.region_walks.empty() ? std::vector<int>{}
                                             : emb_.region_walks[0]) {
        int d = emb_.walks[w][0];
        int i = d >> 1;
        int md;
        if (crossing_cedge[i] < 0)
          md = 2 * full_edge[i] + (d & 1);
        else
          md = (d & 1) ? (2 * primal_half_v[i] + 1) : (2 * primal_half_u[i]);
        top[pcomp[emb_.dart_tail(d)]] = walk_of[md];
      }
      // Enclosure loops: the first loop dart's face hugs the enclosed
      // component; the second replaces that component's exposure.
      for (int ce = 0; ce < static_cast<int>(c_.edges.size()); ++ce) {
        const PlaneDual::CEdge& e = c_.edges[ce];
        if (e.primal >= 0) continue;
        int encl = c_.verts[e.a].enclose_component;
        if (e.a != e.b || encl < 0) continue;
        int me = art_edge[ce];
        if (top[encl] >= 0)
          region.unite(walk_of[2 * me], top[encl]);
        else
          isolated_inside[encl] = walk_of[2 * me];  // edgeless component
        top[encl] = walk_of[2 * me + 1];
      }
      std::vector<int> exposures;
      for (int cmp = 0; cmp < nc; ++cmp)
        if (top[cmp] >= 0) exposures.push_back(top[cmp]);
      for (std::size_t i = 1; i < exposures.size(); ++i)
        region.unite(exposures[0], exposures[i]);
      if (!exposures.empty()) outer_walk_ = exposures[0];
    }

    // Canonical region ids: ascending smallest member walk.
    std::vector<int> rid(nwalk, -1);
    int nregion = 0;
    for (int w = 0; w < nwalk; ++w) {
      int root = region.find(w);
      if (rid[root] < 0) rid[root] = nregion++;
    }
    if (nwalk == 0) {
      // No arcs at all: a single region holding everything.
      faces_.region_count = 1;
      faces_.primal_vertices.assign(1, emb_.verts);
      faces_.cverts.assign(1, {});
      for (std::size_t cv = 0; cv < c_.verts.size(); ++cv)
        faces_.cverts[0].push_back(static_cast<int>(cv));
      faces_.region_of_primal.assign(n, -1);
      for (VertexId v = 0; v < n; ++v)
        if (vhas(emb_.verts, v)) faces_.region_of_primal[v] = 0;
      return;
    }

    faces_.region_count = nregion;
    faces_.primal_vertices.assign(nregion, 0);
    faces_.cverts.assign(nregion, {});
    faces_.region_of_primal.assign(n, -1);
    for (int d = 0; d < 2 * mm; ++d) {
      int v = rot_vertex[d];
      int r = rid[region.find(walk_of[d])];
      if (v < n) {
        faces_.primal_vertices[r] |= vbit(v);
        check(faces_.region_of_primal[v] < 0 || faces_.region_of_primal[v] == r,
              "primal vertex touches two C-regions");
        faces_.region_of_primal[v] = r;
      } else if (v >= cbase) {
        faces_.cverts[r].push_back(v - cbase);
      }
    }
    // Isolated primal vertices sit in the outer region unless an
    // enclosure loop was drawn around them.
    int outer_region = rid[region.find(outer_walk_ >= 0 ? outer_walk_ : 0)];
    for (VertexId v = 0; v < n; ++v)
      if (vhas(emb_.verts, v) && faces_.region_of_primal[v] < 0) {
        int r = outer_region;
        auto it = isolated_inside.find(pcomp[v]);
        if (it != isolated_inside.end()) r = rid[region.find(it->second)];
        faces_.region_of_primal[v] = r;
        faces_.primal_vertices[r] |= vbit(v);
      }
    for (auto& cs : faces_.cverts) {
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }
  }

  const Embedding& emb_;
  const PlaneDual& c_;
  std::vector<MEdge> medges_;
  DualFaces faces_;
  int outer_walk_ = -1;
};

}  // namespace detail

inline DualFaces dual_faces(const Embedding& emb, const PlaneDual& c) {
  return detail::Overlay(emb, c).faces();
}

struct MulticutDual {
  Embedding primal;
  PlaneDual plane;
  std::vector<EdgeId> crossed;        // e_G(C), sorted
  Weight weight = 0;
  std::vector<int> face_assignment;   // per primal vertex: C-region id
};

namespace detail {

// Raw dual of a cut: the dual arcs of the cut edges with rotations read
// off the primal region boundaries.
inline PlaneDual dual_arcs_of_cut(const Embedding& emb,
                                  const std::set<EdgeId>& cut) {
  PlaneDual c;
  std::vector<int> cvert_of_region(emb.region_count, -1);
  std::vector<int> cedge_of_index(emb.edges.size(), -1);
  for (int i = 0; i < static_cast<int>(emb.edges.size()); ++i) {
    if (!cut.count(emb.edges[i].id)) continue;
    for (int r : {emb.left_region(i), emb.right_region(i)})
      if (cvert_of_region[r] < 0) {
        cvert_of_region[r] = static_cast<int>(c.verts.size());
        c.verts.push_back(PlaneDual::CVertex{r, false, -1});
      }
    cedge_of_index[i] = static_cast<int>(c.edges.size());
    c.edges.push_back(PlaneDual::CEdge{cvert_of_region[emb.left_region(i)],
                                       cvert_of_region[emb.right_region(i)],
                                       emb.edges[i].id});
  }
  c.rot.assign(c.verts.size(), {});
  std::map<EdgeId, int> index_of;
  for (int i = 0; i < static_cast<int>(emb.edges.size()); ++i)
    index_of[emb.edges[i].id] = i;
  // Arcs around a dual vertex follow its region boundary in reverse walk
  // order, matching the chirality of the primal rotation lists.
  for (int r = 0; r < emb.region_count; ++r) {
    if (cvert_of_region[r] < 0) continue;
    for (int w : emb.region_walks[r]) {
      const std::vector<int>& walk = emb.walks[w];
      for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
        int i = *it >> 1;
        if (cedge_of_index[i] < 0) continue;
        c.rot[cvert_of_region[r]].push_back(2 * cedge_of_index[i] + (*it & 1));
      }
    }
  }
  return c;
}

inline std::vector<int> primal_components(const Embedding& emb) {
  std::vector<int> comp(emb.n, -1);
  std::vector<std::vector<int>> adj(emb.n);
  for (int i = 0; i < static_cast<int>(emb.edges.size()); ++i) {
    adj[emb.edges[i].u].push_back(i);
    adj[emb.edges[i].v].push_back(i);
  }
  int nc = 0;
  for (VertexId s = 0; s < emb.n; ++s) {
    if (!vhas(emb.verts, s) || comp[s] >= 0) continue;
    comp[s] = nc;
    std::vector<VertexId> st{s};
    while (!st.empty()) {
      VertexId v = st.back();
      st.pop_back();
      for (int ei : adj[v]) {
        VertexId u = emb.edges[ei].other(v);
        if (comp[u] < 0) {
          comp[u] = nc;
          st.push_back(u);
        }
      }
    }
    ++nc;
  }
  return comp;
}

}  // namespace detail

// Constructs the multicut dual of a multicut S: one dual arc per cut edge,
// plus enclosure loops when demands span distinct primal components.
inline MulticutDual dual_from_solution(const Embedding& emb,
                                       const Instance& inst,
                                       const std::vector<EdgeId>& s) {
  if (!verify_multicut(inst, s))
    throw precondition_error("edge set is not a multicut");
  std::set<EdgeId> cut(s.begin(), s.end());
  MulticutDual out;
  out.primal = emb;
  out.plane = detail::dual_arcs_of_cut(emb, cut);
  auto pcomp = detail::primal_components(emb);
  std::set<int> enclosed;
  for (;;) {
    DualFaces faces = dual_faces(emb, out.plane);
    const DemandPair* open = nullptr;
    for (const DemandPair& d : inst.demands)
      if (faces.region_of_primal[d.first] == faces.region_of_primal[d.second]) {
        open = &d;
        break;
      }
    if (!open) {
      out.face_assignment = faces.region_of_primal;
      break;
    }
    check(pcomp[open->first] != pcomp[open->second],
          "region merge within one primal component despite a verified cut");
    int target = pcomp[std::min(open->first, open->second)];
    check(!enclosed.count(target), "component enclosed twice");
    enclosed.insert(target);
    int cv = static_cast<int>(out.plane.verts.size());
    out.plane.verts.push_back(PlaneDual::CVertex{0, true, target});
    int ce = static_cast<int>(out.plane.edges.size());
    out.plane.edges.push_back(PlaneDual::CEdge{cv, cv, -1});
    out.plane.rot.push_back({2 * ce, 2 * ce + 1});
  }
  out.crossed.assign(cut.begin(), cut.end());
  out.weight = inst.weight_of(out.crossed);
  return out;
}

// Inclusion-wise minimalization plus subcubic normalization: removable
// crossing arcs go first (separation re-checked after each removal in
// ascending edge order), degree > 3 vertices are then split into chains of
// degree-3 copies by zero-weight links, and finally artificial links that
// can be dropped without merging demand-separating regions are dropped.
inline MulticutDual minimalize_dual(const Instance& inst, MulticutDual dual) {
  std::vector<EdgeId> s = dual.crossed;
  for (std::size_t i = 0; i < s.size();) {
    std::vector<EdgeId> reduced = s;
    reduced.erase(reduced.begin() + i);
    if (verify_multicut(inst, reduced))
      s = std::move(reduced);
    else
      ++i;
  }
  MulticutDual out = dual_from_solution(dual.primal, inst, s);

  // Subcubic: expand every vertex of degree > 3 into a path of degree-3
  // copies, preserving the cyclic dart order.
  PlaneDual& c = out.plane;
  for (int v = 0; v < static_cast<int>(c.verts.size()); ++v) {
    while (c.degree(v) > 3) {
      std::vector<int> darts = c.rot[v];
      int copy = static_cast<int>(c.verts.size());
      c.verts.push_back(PlaneDual::CVertex{c.verts[v].host_region, true, -1});
      int link = static_cast<int>(c.edges.size());
      c.edges.push_back(PlaneDual::CEdge{v, copy, -1});
      // v keeps the first two darts plus the link; the copy takes the rest.
      auto reattach = [&](int cd, int to) {
        PlaneDual::CEdge& e = c.edges[cd >> 1];
        if (cd & 1)
          e.b = to;
        else
          e.a = to;
      };
      c.rot[v] = {darts[0], darts[1], 2 * link};
      std::vector<int> rest{2 * link + 1};
      for (std::size_t i = 2; i < darts.size(); ++i) {
        rest.push_back(darts[i]);
        reattach(darts[i], copy);
      }
      c.rot.push_back(rest);
    }
  }

  // Artificial links removable without losing region separation.
  for (;;) {
    bool removed = false;
    for (int ce = 0; ce < static_cast<int>(c.edges.size()); ++ce) {
      if (c.edges[ce].primal >= 0) continue;
      PlaneDual trial = c.without_edge(ce);
      DualFaces faces = dual_faces(out.primal, trial);
      bool ok = true;
      for (const DemandPair& d : inst.demands)
        if (faces.region_of_primal[d.first] ==
            faces.region_of_primal[d.second]) {
          ok = false;
          break;
        }
      if (ok) {
        c = trial.without_isolated_vertices();
        removed = true;
        break;
      }
    }
    if (!removed) break;
  }

  DualFaces faces = dual_faces(out.primal, c);
  out.face_assignment = faces.region_of_primal;
  out.crossed = c.crossed_edges();
  out.weight = inst.weight_of(out.crossed);
  check(out.weight == inst.weight_of(s), "minimalization changed the weight");
  return out;
}

// C - F*: drop every dual vertex sitting in a crossed face together with
// its arcs.
inline PlaneDual remove_crossed_faces(const PlaneDual& c,
                                      const std::vector<int>& f_star) {
  PlaneDual out = c;
  for (;;) {
    int victim = -1;
    for (int ce = 0; ce < static_cast<int>(out.edges.size()) && victim < 0;
         ++ce) {
      const PlaneDual::CEdge& e = out.edges[ce];
      if (std::binary_search(f_star.begin(), f_star.end(),
                             out.verts[e.a].host_region) ||
          std::binary_search(f_star.begin(), f_star.end(),
                             out.verts[e.b].host_region))
        victim = ce;
    }
    if (victim < 0) break;
    out = out.without_edge(victim);
  }
  // Vertices in F* faces become isolated and are dropped.
  PlaneDual cleaned;
  std::vector<int> remap(out.verts.size(), -1);
  for (std::size_t v = 0; v < out.verts.size(); ++v) {
    if (std::binary_search(f_star.begin(), f_star.end(),
                           out.verts[v].host_region))
      continue;
    remap[v] = static_cast<int>(cleaned.verts.size());
    cleaned.verts.push_back(out.verts[v]);
    cleaned.rot.push_back(out.rot[v]);
  }
  for (const PlaneDual::CEdge& e : out.edges)
    cleaned.edges.push_back(PlaneDual::CEdge{remap[e.a], remap[e.b], e.primal});
  return cleaned;
}

// ---------------------------------------------------------------------------
// Exact planar multicut.

namespace detail {

// Coarsest demand-valid partitions of the demand-active terminals: every
// block is demand-free inside, and every pair of blocks has a demand
// between them (merging any two would violate one).
inline std::vector<std::vector<VSet>> coarsest_groupings(
    const std::vector<VertexId>& terms, const std::vector<DemandPair>& demands) {
  std::vector<std::vector<VSet>> out;
  int k = static_cast<int>(terms.size());
  std::vector<int> assign(k, 0);
  auto has_demand = [&](VSet a, VSet b) {
    for (const DemandPair& d : demands) {
      bool d1a = vhas(a, d.first), d2a = vhas(a, d.second);
      bool d1b = vhas(b, d.first), d2b = vhas(b, d.second);
      if ((d1a && d2b) || (d2a && d1b)) return true;
    }
    return false;
  };
  // Restricted-growth enumeration of set partitions.
  auto emit = [&]() {
    int blocks = 0;
    for (int i = 0; i < k; ++i) blocks = std::max(blocks, assign[i] + 1);
    std::vector<VSet> part(blocks, 0);
    for (int i = 0; i < k; ++i) part[assign[i]] |= vbit(terms[i]);
    for (const DemandPair& d : demands) {
      for (const VSet& b : part)
        if (vhas(b, d.first) && vhas(b, d.second)) return;  // invalid
    }
    for (int i = 0; i < blocks; ++i)
      for (int j = i + 1; j < blocks; ++j)
        if (!has_demand(part[i], part[j])) return;  // not coarsest
    out.push_back(std::move(part));
  };
  auto rec = [&](auto&& self, int i, int maxb) -> void {
    if (i == k) {
      emit();
      return;
    }
    for (int b = 0; b <= maxb; ++b) {
      assign[i] = b;
      self(self, i + 1, std::max(maxb, b + 1));
    }
  };
  if (k == 0)
    out.push_back({});
  else
    rec(rec, 0, 0);
  return out;
}

}  // namespace detail

// Exact minimum-weight multicut for planar (possibly INF-weighted)
// instances: enumerate the coarsest demand-valid terminal groupings and
// solve each as a multiterminal separation, keeping the canonical best.
// The crossed-face argument is accepted for interface parity with the
// extended-instance form; the solve itself is exact without it and it is
// consumed only by the reporting layer.
inline Solution planar_multicut_exact(const Instance& inst,
                                      const CrossedFaces* = nullptr) {
  if (!is_planar(GraphView::of(inst)))
    throw precondition_error("planar_multicut_exact needs a planar instance");
  if (inst.demands.empty()) return Solution{{}, 0};
  std::set<VertexId> active_set;
  for (const DemandPair& d : inst.demands) {
    active_set.insert(d.first);
    active_set.insert(d.second);
  }
  std::vector<VertexId> active(active_set.begin(), active_set.end());
  std::optional<Solution> best;
  for (const auto& grouping :
       detail::coarsest_groupings(active, inst.demands)) {
    std::vector<DemandPair> pairs;
    for (std::size_t i = 0; i < grouping.size(); ++i)
      for (std::size_t j = i + 1; j < grouping.size(); ++j)
        for (VertexId a : vset_to_list(grouping[i]))
          for (VertexId b : vset_to_list(grouping[j]))
            pairs.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(pairs.begin(), pairs.end());
    Weight cutoff = best ? best->weight : kInfWeight - 1;
    auto got = multicut_branch_and_bound(inst, pairs, cutoff);
    if (got && (!best || solution_less(*got, *best))) best = got;
  }
  if (!best) throw infeasible_error("no finite multicut");
  return *best;
}

}  // namespace multicut
