#pragma once

// The weighted crossing-number solver: normalization per subset Z of the
// crossing edges, demand-candidate enumeration over V(H) union V(E_cr),
// the normalized solve against the planar remainder, and the witness
// machinery used by the structural property checks and reports.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/biclique.hpp"
#include "multicut/cuts.hpp"
#include "multicut/drawing.hpp"
#include "multicut/dual.hpp"
#include "multicut/embedding.hpp"
#include "multicut/instance.hpp"
#include "multicut/oracle.hpp"
#include "multicut/treewidth.hpp"

namespace multicut {

inline constexpr int kDemandCandidateMaxGround = 10;

// A complete multipartite demand graph on V(H) union V(E_cr) with the
// designated (B1-bar, B2-bar, X-bar groups) structure.
struct DemandCandidate {
  VSet b1 = 0, b2 = 0;
  std::vector<VSet> xbar_groups;  // nonempty, canonical order

  std::vector<VSet> parts() const {
    std::vector<VSet> out;
    if (b1) out.push_back(b1);
    if (b2) out.push_back(b2);
    for (VSet g : xbar_groups) out.push_back(g);
    return out;
  }

  VSet xbar() const {
    VSet x = 0;
    for (VSet g : xbar_groups) x |= g;
    return x;
  }

  std::vector<DemandPair> demand_pairs() const {
    auto ps = parts();
    std::vector<DemandPair> out;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        for (VertexId a : vset_to_list(ps[i]))
          for (VertexId b : vset_to_list(ps[j]))
            out.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string key() const {
    VSet lo = std::min(b1, b2), hi = std::max(b1, b2);
    std::ostringstream os;
    os << lo << '/' << hi << '/';
    for (VSet g : xbar_groups) os << g << ',';
    return os.str();
  }
};

// G_Z: delete Z and give every remaining crossing edge infinite weight.
// E_cr refers to the drawing of the input instance; the surviving drawing
// keeps exactly the pairs with both edges alive.
inline Instance normalize(const Instance& inst, const Drawing& drawing,
                          const std::vector<EdgeId>& z) {
  auto ecr = drawing.e_cr();
  for (EdgeId id : z)
    if (!std::binary_search(ecr.begin(), ecr.end(), id))
      throw precondition_error("Z contains a non-crossing edge");
  Instance out = inst.without_edges(z);
  std::set<EdgeId> zset(z.begin(), z.end());
  for (Edge& e : out.edges)
    if (std::binary_search(ecr.begin(), ecr.end(), e.id)) e.w = kInfWeight;
  out.crossings.clear();
  for (auto [a, b] : drawing.crossing_pairs)
    if (!zset.count(a) && !zset.count(b)) out.crossings.emplace_back(a, b);
  std::sort(out.crossings.begin(), out.crossings.end());
  return out;
}

// All partitions of the ground set into an ordered pair of possibly empty
// sets (B1-bar, B2-bar) plus zero or more unordered X-bar groups,
// deduplicated by canonical form (B-side swap symmetry collapsed).
inline std::vector<DemandCandidate> enumerate_demand_candidates(
    VSet ground, int max_ground = kDemandCandidateMaxGround) {
  if (vset_size(ground) > max_ground)
    throw precondition_error("demand-candidate ground set exceeds bound");
  std::vector<VertexId> elems = vset_to_list(ground);
  int k = static_cast<int>(elems.size());
  std::vector<DemandCandidate> out;
  std::set<std::string> seen;
  auto emit = [&](DemandCandidate cand) {
    if (cand.b1 > cand.b2) std::swap(cand.b1, cand.b2);
    std::sort(cand.xbar_groups.begin(), cand.xbar_groups.end());
    if (seen.insert(cand.key()).second) out.push_back(std::move(cand));
  };
  if (k == 0) {
    emit(DemandCandidate{});
    return out;
  }
  std::vector<int> assign(k, 0);
  auto rec = [&](auto&& self, int i, int maxb) -> void {
    if (i == k) {
      std::vector<VSet> blocks(maxb, 0);
      for (int j = 0; j < k; ++j) blocks[assign[j]] |= vbit(elems[j]);
      // Designate none, one, or two of the blocks as the B sides.
      DemandCandidate base;
      base.xbar_groups = blocks;
      emit(base);
      for (int b1 = 0; b1 < maxb; ++b1) {
        DemandCandidate one;
        one.b1 = blocks[b1];
        for (int j = 0; j < maxb; ++j)
          if (j != b1) one.xbar_groups.push_back(blocks[j]);
        emit(one);
        for (int b2 = 0; b2 < maxb; ++b2) {
          if (b2 == b1) continue;
          DemandCandidate two;
          two.b1 = blocks[b1];
          two.b2 = blocks[b2];
          for (int j = 0; j < maxb; ++j)
            if (j != b1 && j != b2) two.xbar_groups.push_back(blocks[j]);
          emit(two);
        }
      }
      return;
    }
    for (int b = 0; b <= maxb; ++b) {
      assign[i] = b;
      self(self, i + 1, std::max(maxb, b + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

namespace detail {

// Ground elements merged along infinite-weight paths: any finite multicut
// leaves such elements in one component, so every usable candidate keeps
// them together.
struct GroundAtoms {
  std::vector<VSet> atoms;        // ground elements per atom
  std::vector<int> atom_of;       // per vertex, -1 when not ground
};

inline GroundAtoms merge_ground(const Instance& inst, VSet ground) {
  GraphView inf_edges(inst.n, [&] {
    std::vector<Edge> keep;
    for (const Edge& e : inst.edges)
      if (is_inf(e.w)) keep.push_back(e);
    return keep;
  }(), inst.vertex_set());
  auto comp = inf_edges.components();
  GroundAtoms out;
  out.atom_of.assign(inst.n, -1);
  std::map<int, int> atom_of_comp;
  for (VertexId v : vset_to_list(ground)) {
    auto it = atom_of_comp.find(comp[v]);
    int a;
    if (it == atom_of_comp.end()) {
      a = static_cast<int>(out.atoms.size());
      out.atoms.push_back(0);
      atom_of_comp.emplace(comp[v], a);
    } else {
      a = it->second;
    }
    out.atoms[a] |= vbit(v);
    out.atom_of[v] = a;
  }
  return out;
}

// Structure-pruned candidate family for the normalized solve. Every
// candidate respects the atoms, separates all demand pairs, uses at most
// one X-bar group per X-atom and never places a B1 (B2) terminal in the
// opposite B side; the witness of the constructive proof satisfies all of
// these, and every returned solution is re-verified anyway.
inline std::vector<DemandCandidate> constrained_candidates(
    const Instance& inst, VSet ground, const BicliqueDecomposition& dec) {
  GroundAtoms ga = merge_ground(inst, ground);
  VSet b1set = list_to_vset(dec.b1), b2set = list_to_vset(dec.b2);
  VSet xset = list_to_vset(dec.x);
  int na = static_cast<int>(ga.atoms.size());
  std::vector<int> xatoms;
  std::vector<int> rest;
  for (int a = 0; a < na; ++a) {
    if (ga.atoms[a] & xset)
      xatoms.push_back(a);
    else
      rest.push_back(a);
  }
  // Demand pairs at atom granularity; a pair inside one atom is
  // unseparable and the caller treats the instance as infeasible.
  for (const DemandPair& d : inst.demands)
    if (ga.atom_of[d.first] >= 0 &&
        ga.atom_of[d.first] == ga.atom_of[d.second])
      throw infeasible_error("demand pair joined by infinite-weight edges");

  std::vector<DemandCandidate> out;
  std::set<std::string> seen;
  int nx = static_cast<int>(xatoms.size());
  std::vector<int> xassign(nx, 0);
  std::vector<int> rassign(rest.size(), 0);
  auto build_and_emit = [&](int ngroups) {
    DemandCandidate cand;
    cand.xbar_groups.assign(ngroups, 0);
    for (int i = 0; i < nx; ++i)
      cand.xbar_groups[xassign[i]] |= ga.atoms[xatoms[i]];
    for (std::size_t i = 0; i < rest.size(); ++i) {
      int slot = rassign[i];
      if (slot == 0)
        cand.b1 |= ga.atoms[rest[i]];
      else if (slot == 1)
        cand.b2 |= ga.atoms[rest[i]];
      else
        cand.xbar_groups[slot - 2] |= ga.atoms[rest[i]];
    }
    // B-side constraints from the witness construction.
    if ((cand.b1 & b2set) || (cand.b2 & b1set)) return;
    // Every demand pair must fall across parts.
    auto ps = cand.parts();
    for (const DemandPair& d : inst.demands)
      for (VSet p : ps)
        if (vhas(p, d.first) && vhas(p, d.second)) return;
    if (cand.b1 > cand.b2) std::swap(cand.b1, cand.b2);
    std::sort(cand.xbar_groups.begin(), cand.xbar_groups.end());
    if (seen.insert(cand.key()).second) out.push_back(std::move(cand));
  };
  auto rec_rest = [&](auto&& self, std::size_t i, int ngroups) -> void {
    if (i == rest.size()) {
      build_and_emit(ngroups);
      return;
    }
    int slots = 2 + ngroups;
    bool is_b1 = (ga.atoms[rest[i]] & b1set) != 0;
    bool is_b2 = (ga.atoms[rest[i]] & b2set) != 0;
    for (int s = 0; s < slots; ++s) {
      if (s == 0 && is_b2) continue;
      if (s == 1 && is_b1) continue;
      rassign[i] = s;
      self(self, i + 1, ngroups);
    }
  };
  auto rec_x = [&](auto&& self, int i, int maxg) -> void {
    if (i == nx) {
      rec_rest(rec_rest, 0, maxg);
      return;
    }
    for (int g = 0; g <= maxg; ++g) {
      xassign[i] = g;
      self(self, i + 1, std::max(maxg, g + 1));
    }
  };
  if (nx == 0)
    rec_rest(rec_rest, 0, 0);
  else
    rec_x(rec_x, 0, 0);
  return out;
}

}  // namespace detail

// Minimum multicut of a normalized crossing-planar instance with weight at
// most cutoff, or nullopt. Every candidate solution is verified against
// the instance itself before competing.
inline std::optional<Solution> solve_normalized_bounded(
    const Instance& inst, Weight cutoff = kInfWeight - 1) {
  Drawing drawing = drawing_of(inst);
  std::vector<EdgeId> ecr = drawing.e_cr();
  for (EdgeId id : ecr)
    check(is_inf(inst.edge_by_id(id).w),
          "normalized instance requires infinite-weight crossing edges");
  if (inst.demands.empty()) return Solution{{}, 0};
  if (ecr.empty()) {
    // Reduces to the plain planar solve.
    try {
      Solution s = planar_multicut_exact(inst);
      if (s.weight > cutoff) return std::nullopt;
      return s;
    } catch (const infeasible_error&) {
      return std::nullopt;
    }
  }

  Instance g_prime = inst.without_edges(ecr);
  Embedding emb = canonical_embedding(GraphView::of(g_prime),
                                      g_prime.rotations);
  // F* is consumed by the reporting layer only; the canonical embedding of
  // a derived remainder may fail to expose a common face for a pair that
  // the original drawing places fine, so the annotation check is advisory
  // on this path.
  try {
    crossed_faces(inst, drawing, emb);
  } catch (const precondition_error&) {
  }

  VSet ground = list_to_vset(inst.terminals);
  for (EdgeId id : ecr) {
    const Edge& e = inst.edge_by_id(id);
    ground |= vbit(e.u) | vbit(e.v);
  }
  BicliqueDecomposition dec = extended_biclique_distance(inst);
  std::vector<DemandCandidate> candidates;
  try {
    candidates = detail::constrained_candidates(inst, ground, dec);
  } catch (const infeasible_error&) {
    return std::nullopt;
  }

  std::optional<Solution> best;
  std::map<std::string, std::optional<Solution>> solve_memo;
  for (const DemandCandidate& cand : candidates) {
    std::vector<DemandPair> pairs = cand.demand_pairs();
    std::ostringstream key;
    for (const DemandPair& d : pairs) key << d.first << '-' << d.second << ',';
    Weight bound = best ? best->weight : cutoff;
    std::optional<Solution> got;
    auto hit = solve_memo.find(key.str());
    if (hit != solve_memo.end() && hit->second &&
        hit->second->weight <= bound) {
      got = hit->second;
    } else if (hit != solve_memo.end() && !hit->second) {
      continue;
    } else {
      Instance sub = g_prime;
      sub.terminals = vset_to_list(ground);
      sub.demands = pairs;
      got = multicut_branch_and_bound(sub, pairs, bound);
      solve_memo[key.str()] = got;
    }
    if (!got) continue;
    if (!verify_multicut(inst, got->edges)) continue;
    Solution s{got->edges, inst.weight_of(got->edges)};
    if (s.weight > cutoff) continue;
    if (!best || solution_less(s, *best)) best = s;
  }
  return best;
}

// Spec-facing entry: throws when no candidate verifies.
inline Solution solve_normalized(const Instance& inst) {
  auto s = solve_normalized_bounded(inst);
  if (!s) throw infeasible_error("no finite multicut");
  return *s;
}

struct CrossingOptions {
  bool draw_tiny = false;      // allow the tiny drawing search
  int max_cr = kTinyDrawMaxCr; // bound for that search
};

// Edge-weighted multicut parameterized by the drawing's crossing edges:
// try every Z subset of E_cr, solve the normalized instance, and keep the
// best verified recombination.
inline Solution solve_crossing(const Instance& inst,
                               const CrossingOptions& opts = {}) {
  Drawing drawing = drawing_of(inst);
  if (drawing.crossing_pairs.empty() &&
      !is_planar(GraphView::of(inst))) {
    if (!opts.draw_tiny)
      throw precondition_error(
          "non-planar instance without a drawing; pass --draw-tiny for "
          "small graphs");
    auto d = tiny_min_crossing_drawing(inst, opts.max_cr);
    if (!d)
      throw precondition_error(
          "no drawing within the crossing bound of the tiny search");
    drawing = *d;
  }
  std::vector<EdgeId> ecr = drawing.e_cr();
  if (!is_planar(GraphView::of_without(inst, ecr)))
    throw precondition_error(
        "drawing annotation inconsistent: remainder is not planar");

  std::optional<Solution> best;
  int k = static_cast<int>(ecr.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<EdgeId> z;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1) z.push_back(ecr[i]);
    Weight wz = inst.weight_of(z);
    if (best && wz > best->weight) continue;
    Instance normalized = normalize(inst, drawing, z);
    Weight cutoff =
        best ? (is_inf(best->weight) ? kInfWeight - 1 : best->weight - wz)
             : kInfWeight - 1;
    if (cutoff < 0) continue;
    auto sz = solve_normalized_bounded(normalized, cutoff);
    if (!sz) continue;
    std::vector<EdgeId> combined = sz->edges;
    for (EdgeId id : z) combined.push_back(id);
    std::sort(combined.begin(), combined.end());
    if (!verify_multicut(inst, combined)) continue;
    Solution s{combined, inst.weight_of(combined)};
    if (!best || solution_less(s, *best)) best = s;
  }
  if (!best || is_inf(best->weight))
    throw infeasible_error("no finite multicut");
  return *best;
}

// ---------------------------------------------------------------------------
// Witness construction and structural reports.

// The witness demand candidate of a normalized instance: built from a
// minimum multicut S* chosen to minimize the number of ground elements
// sharing a component with an X terminal (ties to the lexicographically
// smallest edge list), classifying components into B1-bar / B2-bar /
// per-component X-bar groups. Components carrying only I terminals join
// B1-bar; terminal-free components join B2-bar.
struct Witness {
  Solution s_star;
  DemandCandidate hprime;
  VSet ground = 0;
};

inline Witness build_witness(const Instance& inst,
                             const BicliqueDecomposition& dec,
                             int oracle_max_edges = kOracleMaxEdges) {
  Drawing drawing = drawing_of(inst);
  VSet ground = list_to_vset(inst.terminals);
  for (EdgeId id : drawing.e_cr()) {
    const Edge& e = inst.edge_by_id(id);
    ground |= vbit(e.u) | vbit(e.v);
  }
  VSet b1set = list_to_vset(dec.b1);
  VSet xset = list_to_vset(dec.x);
  VSet iset = list_to_vset(dec.isolated);
  VSet tset = list_to_vset(inst.terminals);

  auto classify = [&](const Solution& s, DemandCandidate* cand) -> int {
    GraphView g = GraphView::of(inst);
    std::vector<bool> removed(g.edge_count(), false);
    for (int i = 0; i < g.edge_count(); ++i)
      removed[i] = std::binary_search(s.edges.begin(), s.edges.end(),
                                      g.edges()[i].id);
    auto comp = g.components(removed);
    int ncomp = 0;
    for (int c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<VSet> members(ncomp, 0);
    for (VertexId v = 0; v < g.n(); ++v)
      if (comp[v] >= 0) members[comp[v]] |= vbit(v);
    cand->b1 = cand->b2 = 0;
    cand->xbar_groups.clear();
    int xbar_count = 0;
    for (int c = 0; c < ncomp; ++c) {
      VSet in_ground = members[c] & ground;
      if (in_ground == 0 && (members[c] & xset) == 0) continue;
      if (members[c] & xset) {
        cand->xbar_groups.push_back(in_ground);
        xbar_count += vset_size(in_ground);
      } else if (members[c] & b1set) {
        cand->b1 |= in_ground;
      } else if ((members[c] & tset) != 0 &&
                 (members[c] & tset & ~iset) == 0) {
        cand->b1 |= in_ground;  // only I terminals
      } else {
        cand->b2 |= in_ground;
      }
    }
    std::sort(cand->xbar_groups.begin(), cand->xbar_groups.end());
    return xbar_count;
  };

  Witness best;
  best.ground = ground;
  int best_xbar = -1;
  for (const Solution& s : all_min_multicuts(inst, oracle_max_edges)) {
    DemandCandidate cand;
    int xbar = classify(s, &cand);
    if (best_xbar < 0 || xbar < best_xbar) {
      best_xbar = xbar;
      best.s_star = s;
      best.hprime = cand;
    }
  }
  return best;
}

// Structural record for one normalized instance: the witness candidate's
// minimalized dual with crossed faces removed, its treewidth, the
// 5-domination data, and the two face claims.
struct DualReport {
  int mu = 0;
  int f_star_size = 0;
  int tw_c_minus_fstar = 0;
  int dominating_size = 0;
  bool dominating_ok = false;
  bool claim_xbar_face = false;   // every X-bar face holds an X terminal
  bool claim_degree3 = false;     // every degree-3 vertex sees an X-bar face
  Weight witness_weight = 0;
  Weight dual_weight = 0;
};

inline DualReport dual_report(const Instance& inst,
                              int oracle_max_edges = kOracleMaxEdges) {
  Drawing drawing = drawing_of(inst);
  std::vector<EdgeId> ecr = drawing.e_cr();
  BicliqueDecomposition dec = extended_biclique_distance(inst);
  Witness w = build_witness(inst, dec, oracle_max_edges);

  Instance g_prime = inst.without_edges(ecr);
  g_prime.terminals = vset_to_list(w.ground);
  g_prime.demands = w.hprime.demand_pairs();
  Embedding emb = canonical_embedding(GraphView::of(g_prime),
                                      g_prime.rotations);
  CrossedFaces fstar = crossed_faces(inst, drawing, emb);

  DualReport rep;
  rep.mu = dec.mu;
  rep.f_star_size = static_cast<int>(fstar.f_star.size());
  rep.witness_weight = w.s_star.weight;

  Solution s_prime = planar_multicut_exact(g_prime);
  MulticutDual dual = dual_from_solution(emb, g_prime, s_prime.edges);
  dual = minimalize_dual(g_prime, dual);
  rep.dual_weight = dual.weight;
  PlaneDual c_prime = remove_crossed_faces(dual.plane, fstar.f_star);
  rep.tw_c_minus_fstar = treewidth_exact(c_prime.adjacency());

  DualFaces faces = dual_faces(emb, c_prime);
  VSet xbar = w.hprime.xbar();
  VSet xset = list_to_vset(dec.x);
  rep.claim_xbar_face = true;
  for (int r = 0; r < faces.region_count; ++r)
    if ((faces.primal_vertices[r] & xbar) != 0 &&
        (faces.primal_vertices[r] & xset) == 0)
      rep.claim_xbar_face = false;
  rep.claim_degree3 = true;
  for (int v = 0; v < static_cast<int>(c_prime.verts.size()); ++v) {
    if (c_prime.degree(v) != 3) continue;
    bool sees_xbar = false;
    for (int r = 0; r < faces.region_count && !sees_xbar; ++r)
      if ((faces.primal_vertices[r] & xbar) != 0)
        for (int cv : faces.cverts[r])
          if (cv == v) {
            sees_xbar = true;
            break;
          }
    if (!sees_xbar) rep.claim_degree3 = false;
  }

  // 5-domination of the face-augmented dual by the X-carrying faces.
  DualFaces full_faces = dual_faces(emb, dual.plane);
  int nc = static_cast<int>(dual.plane.verts.size());
  std::vector<std::vector<int>> aug(nc + full_faces.region_count);
  for (const PlaneDual::CEdge& e : dual.plane.edges)
    if (e.a != e.b) {
      aug[e.a].push_back(e.b);
      aug[e.b].push_back(e.a);
    }
  std::vector<int> zx;
  for (int r = 0; r < full_faces.region_count; ++r) {
    for (int cv : full_faces.cverts[r]) {
      aug[nc + r].push_back(cv);
      aug[cv].push_back(nc + r);
    }
    if (full_faces.primal_vertices[r] & xset) zx.push_back(nc + r);
  }
  rep.dominating_size = static_cast<int>(zx.size());
  rep.dominating_ok = !zx.empty() && dominating_check(aug, zx, 5);
  return rep;
}

}  // namespace multicut
