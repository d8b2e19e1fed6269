#pragma once

// States: subpartitions of V(G) covering W union T, their alpha values and
// fat / fat-neighboring / thin classification, the kappa and tau
// potentials, relevance, branching, and the two complete-state handlers.
// All laws promised by the construction are asserted at runtime.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/cuts.hpp"
#include "multicut/dual.hpp"
#include "multicut/instance.hpp"
#include "multicut/oracle.hpp"
#include "multicut/planarize.hpp"

namespace multicut {

enum class ClassKind { kFat, kFatNeighboring, kThin };

struct State {
  std::vector<VSet> classes;  // disjoint, each meets W union T; sorted by
                              // smallest member
  std::vector<int> alpha;
  std::vector<ClassKind> kinds;
  int kappa = 0;
  int tau = 0;

  VSet cover() const {
    VSet u = 0;
    for (VSet y : classes) u |= y;
    return u;
  }

  int size() const { return static_cast<int>(classes.size()); }

  bool has_thin() const {
    return std::find(kinds.begin(), kinds.end(), ClassKind::kThin) !=
           kinds.end();
  }

  int first_thin() const {
    for (int i = 0; i < size(); ++i)
      if (kinds[i] == ClassKind::kThin) return i;
    return -1;
  }

  std::string key() const {
    std::ostringstream os;
    for (VSet y : classes) os << y << ',';
    return os.str();
  }

  std::string kind_counts() const {
    int f = 0, n = 0, t = 0;
    for (ClassKind k : kinds) {
      if (k == ClassKind::kFat) ++f;
      if (k == ClassKind::kFatNeighboring) ++n;
      if (k == ClassKind::kThin) ++t;
    }
    std::ostringstream os;
    os << f << '/' << n << '/' << t;
    return os.str();
  }
};

// alpha of class i within the given family: the cost gap between
// separating the whole class and separating only its W-union-T elements.
inline int alpha_value(const KPlanarContext& ctx,
                       const std::vector<VSet>& classes, int i) {
  VSet y = classes[i];
  VSet others = 0;
  for (int j = 0; j < static_cast<int>(classes.size()); ++j)
    if (j != i) others |= classes[j];
  VSet wt = ctx.wt();
  return ctx.lambda0(y, others) - ctx.lambda0(y & wt, wt & ~y);
}

inline std::vector<ClassKind> classify_classes(const KPlanarContext& ctx,
                                               const std::vector<VSet>& classes,
                                               const std::vector<int>& alpha) {
  int threshold = ctx.fat_threshold();
  int k = static_cast<int>(classes.size());
  std::vector<ClassKind> kinds(k, ClassKind::kThin);
  for (int i = 0; i < k; ++i)
    if (alpha[i] >= threshold) kinds[i] = ClassKind::kFat;
  for (int i = 0; i < k; ++i) {
    if (kinds[i] == ClassKind::kFat) continue;
    bool neighboring = false;
    for (int j = 0; j < k && !neighboring; ++j) {
      if (kinds[j] != ClassKind::kFat) continue;
      neighboring = !ctx.g0().between(classes[i], classes[j]).empty();
    }
    if (neighboring) kinds[i] = ClassKind::kFatNeighboring;
  }
  return kinds;
}

inline int kappa_contribution(const KPlanarContext& ctx, ClassKind kind,
                              int alpha) {
  int threshold = ctx.fat_threshold();
  switch (kind) {
    case ClassKind::kFat:
      return 2 * threshold;
    case ClassKind::kFatNeighboring:
      return threshold + alpha;
    case ClassKind::kThin:
      return alpha;
  }
  return 0;
}

inline int tau_value(const KPlanarContext& ctx,
                     const std::vector<VSet>& classes) {
  int t = 0;
  for (VSet y : classes) t += ctx.g0().induced_component_count(y);
  return t;
}

// Builds a State from raw classes: canonical order, cached values, and the
// state invariants checked.
inline State make_state(const KPlanarContext& ctx, std::vector<VSet> classes) {
  std::sort(classes.begin(), classes.end(),
            [](VSet a, VSet b) { return vset_min(a) < vset_min(b); });
  State st;
  st.classes = std::move(classes);
  VSet seen = 0;
  for (VSet y : st.classes) {
    check(y != 0, "empty state class");
    check((y & seen) == 0, "state classes overlap");
    check((y & ctx.wt()) != 0, "state class misses W union T");
    seen |= y;
  }
  check((ctx.wt() & ~seen) == 0, "state does not cover W union T");
  check(st.size() <= 2 * ctx.pi() + ctx.t(), "state has too many classes");
  int k = st.size();
  st.alpha.resize(k);
  for (int i = 0; i < k; ++i) st.alpha[i] = alpha_value(ctx, st.classes, i);
  st.kinds = classify_classes(ctx, st.classes, st.alpha);
  st.kappa = 0;
  for (int i = 0; i < k; ++i) {
    check(st.alpha[i] >= 0, "negative alpha on a state class");
    st.kappa += kappa_contribution(ctx, st.kinds[i], st.alpha[i]);
  }
  st.tau = tau_value(ctx, st.classes);
  check(st.kappa <= st.size() * 2 * ctx.fat_threshold(), "kappa above bound");
  return st;
}

// P2 extends P1: same size, every class of P1 inside a distinct class of P2.
inline bool extends(const std::vector<VSet>& p1, const std::vector<VSet>& p2) {
  if (p1.size() != p2.size()) return false;
  std::vector<bool> used(p2.size(), false);
  for (VSet y : p1) {
    int match = -1;
    for (std::size_t j = 0; j < p2.size(); ++j)
      if ((y & ~p2[j]) == 0) {
        match = static_cast<int>(j);
        break;
      }
    if (match < 0 || used[match]) return false;
    used[match] = true;
  }
  return true;
}

// Partition of the active vertices into components of G0 minus S0.
inline std::vector<VSet> component_partition(const KPlanarContext& ctx,
                                             const std::vector<EdgeId>& s) {
  std::vector<EdgeId> s0;
  for (EdgeId id : s)
    if (ctx.g0().has_edge_id(id)) s0.push_back(id);
  GraphView reduced(ctx.g0().n(), [&] {
    std::vector<Edge> keep;
    for (const Edge& e : ctx.g0().edges())
      if (std::find(s0.begin(), s0.end(), e.id) == s0.end()) keep.push_back(e);
    return keep;
  }(), ctx.g0().vertices());
  auto comp = reduced.components();
  std::vector<VSet> parts;
  for (VertexId v = 0; v < reduced.n(); ++v) {
    if (comp[v] < 0) continue;
    if (comp[v] >= static_cast<int>(parts.size()))
      parts.resize(comp[v] + 1, 0);
    parts[comp[v]] |= vbit(v);
  }
  std::sort(parts.begin(), parts.end(),
            [](VSet a, VSet b) { return vset_min(a) < vset_min(b); });
  return parts;
}

// S respects P: the component partition of G0 minus S0 extends P.
inline bool respects(const KPlanarContext& ctx, const std::vector<EdgeId>& s,
                     const State& st) {
  return extends(st.classes, component_partition(ctx, s));
}

// Complete: no uncovered vertex has a G0-neighbor inside a thin class.
inline bool is_complete(const KPlanarContext& ctx, const State& st) {
  VSet uncovered = ctx.g0().vertices() & ~st.cover();
  VSet thin = 0;
  for (int i = 0; i < st.size(); ++i)
    if (st.kinds[i] == ClassKind::kThin) thin |= st.classes[i];
  for (VertexId u : vset_to_list(uncovered))
    for (int ei : ctx.g0().incident(u))
      if (vhas(thin, ctx.g0().edges()[ei].other(u))) return false;
  return true;
}

// Relevant set for (Y, Y2) in G0; with no opposite side the whole
// connected G0 is the unique maximum zero-boundary superset.
inline VSet relevant_for(const KPlanarContext& ctx, VSet y, VSet y2) {
  if (y2 == 0) {
    check(ctx.g0().is_connected(), "relevant set needs a connected G0");
    return ctx.g0().vertices();
  }
  return relevant_set(ctx.g0(), y, y2);
}

inline bool is_relevant(const KPlanarContext& ctx, const State& st) {
  for (int i = 0; i < st.size(); ++i) {
    VSet others = st.cover() & ~st.classes[i];
    if (relevant_for(ctx, st.classes[i], others) != st.classes[i]) return false;
  }
  return true;
}

// All set partitions of W union T, in restricted-growth order.
inline std::vector<State> enumerate_initial_states(const KPlanarContext& ctx) {
  std::vector<VertexId> ground = vset_to_list(ctx.wt());
  int k = static_cast<int>(ground.size());
  if (k > 10)
    throw precondition_error(
        "instance too large for state enumeration (|W union T| > 10)");
  std::vector<State> out;
  if (k == 0) return out;
  std::vector<int> assign(k, 0);
  auto rec = [&](auto&& self, int i, int maxb) -> void {
    if (i == k) {
      int blocks = maxb;
      std::vector<VSet> classes(blocks, 0);
      for (int j = 0; j < k; ++j) classes[assign[j]] |= vbit(ground[j]);
      State st = make_state(ctx, std::move(classes));
      check(st.tau <= 2 * ctx.pi() + ctx.t(), "initial state tau above bound");
      out.push_back(std::move(st));
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

// Replace every class by the relevant set for it against the rest,
// sequentially in canonical order. Size is preserved, tau never grows,
// kappa never shrinks, and the result is relevant; all asserted.
inline State make_relevant(const KPlanarContext& ctx, const State& st) {
  std::vector<VSet> classes = st.classes;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    VSet others = 0;
    for (std::size_t j = 0; j < classes.size(); ++j)
      if (j != i) others |= classes[j];
    classes[i] = relevant_for(ctx, classes[i], others);
  }
  State out = make_state(ctx, std::move(classes));
  check(out.size() == st.size(), "make_relevant changed the class count");
  check(out.tau <= st.tau, "make_relevant increased tau");
  check(out.kappa >= st.kappa, "make_relevant decreased kappa");
  check(is_relevant(ctx, out), "make_relevant output is not relevant");
  return out;
}

// One state per class, adding the chosen uncovered vertex to it. Requires
// a relevant incomplete state; kappa strictly increases and tau grows by
// at most one in every branch, asserted.
inline std::vector<State> branch_incomplete(const KPlanarContext& ctx,
                                            const State& st) {
  if (!is_relevant(ctx, st))
    throw precondition_error("branch_incomplete needs a relevant state");
  if (is_complete(ctx, st))
    throw precondition_error("branch_incomplete needs an incomplete state");
  VSet uncovered = ctx.g0().vertices() & ~st.cover();
  VSet thin = 0;
  for (int i = 0; i < st.size(); ++i)
    if (st.kinds[i] == ClassKind::kThin) thin |= st.classes[i];
  VertexId u0 = -1;
  for (VertexId u : vset_to_list(uncovered)) {
    for (int ei : ctx.g0().incident(u))
      if (vhas(thin, ctx.g0().edges()[ei].other(u))) {
        u0 = u;
        break;
      }
    if (u0 >= 0) break;
  }
  check(u0 >= 0, "incomplete state without a branch vertex");
  std::vector<State> out;
  for (int i = 0; i < st.size(); ++i) {
    std::vector<VSet> classes = st.classes;
    classes[i] |= vbit(u0);
    State child = make_state(ctx, std::move(classes));
    check(child.kappa > st.kappa, "branch did not increase kappa");
    check(child.tau <= st.tau + 1, "branch grew tau by more than one");
    out.push_back(std::move(child));
  }
  check(static_cast<int>(out.size()) <= 2 * ctx.pi() + ctx.t(),
        "branch produced too many states");
  return out;
}

struct ExtendedSubinstance {
  std::vector<EdgeId> s_prime;  // sorted
  Instance sub;
};

// Complete state with a thin class: delete the G0 boundary of the first
// thin class and shrink the instance. Returns nullopt when neither case
// applies, certifying the state was invalid.
inline std::optional<ExtendedSubinstance> handle_thin_complete(
    const KPlanarContext& ctx, const State& st) {
  if (!is_complete(ctx, st))
    throw precondition_error("handle_thin_complete needs a complete state");
  int yi = st.first_thin();
  if (yi < 0)
    throw precondition_error("handle_thin_complete needs a thin class");
  VSet y0 = st.classes[yi];
  ExtendedSubinstance out;
  out.s_prime = ctx.g0().boundary(y0);
  const Instance& inst = ctx.instance();
  bool case1 = false;
  for (EdgeId id : ctx.e_pi()) {
    const Edge& e = inst.edge_by_id(id);
    if (vhas(y0, e.u) != vhas(y0, e.v)) case1 = true;
  }
  if (case1) {
    out.sub = inst.without_edges(out.s_prime);
    return out;
  }
  if ((y0 & list_to_vset(inst.terminals)) != 0) {
    out.sub = inst.without_vertices(y0);
    return out;
  }
  return std::nullopt;  // contradicts validity; used as a pruning signal
}

// Complete state without thin classes: reduce to a weighted planar
// instance on G0 with one representative per class component and a
// complete multipartite demand graph, then recombine with subsets of
// E_pi. Returns nullopt when the reduction is infeasible or no
// recombination verifies, certifying the state was invalid.
inline std::optional<Solution> solve_no_thin_complete(const KPlanarContext& ctx,
                                                      const State& st) {
  if (!is_complete(ctx, st))
    throw precondition_error("solve_no_thin_complete needs a complete state");
  if (st.has_thin())
    throw precondition_error("solve_no_thin_complete forbids thin classes");
  const Instance& inst = ctx.instance();

  Instance planar;
  planar.n = inst.n;
  planar.vertices = inst.vertices;
  for (const Edge& e : ctx.g0().edges()) {
    bool intra = false;
    for (int i = 0; i < st.size(); ++i)
      if (vhas(st.classes[i], e.u) && vhas(st.classes[i], e.v)) intra = true;
    planar.edges.push_back(Edge{e.u, e.v, intra ? kInfWeight : Weight{1}, e.id});
  }
  // One representative per component of each class, lowest index first;
  // demand graph complete multipartite over the class grouping.
  std::vector<std::vector<VertexId>> reps_by_class(st.size());
  for (int i = 0; i < st.size(); ++i) {
    VSet left = st.classes[i];
    while (left) {
      VertexId s = vset_min(left);
      VSet compo = vbit(s);
      std::vector<VertexId> stack{s};
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (int ei : ctx.g0().incident(v)) {
          VertexId u = ctx.g0().edges()[ei].other(v);
          if (vhas(st.classes[i], u) && !vhas(compo, u)) {
            compo |= vbit(u);
            stack.push_back(u);
          }
        }
      }
      reps_by_class[i].push_back(vset_min(compo));
      left &= ~compo;
    }
  }
  std::vector<VertexId> all_reps;
  for (auto& reps : reps_by_class)
    for (VertexId r : reps) all_reps.push_back(r);
  std::sort(all_reps.begin(), all_reps.end());
  planar.terminals = all_reps;
  for (int i = 0; i < st.size(); ++i)
    for (int j = i + 1; j < st.size(); ++j)
      for (VertexId a : reps_by_class[i])
        for (VertexId b : reps_by_class[j])
          planar.demands.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(planar.demands.begin(), planar.demands.end());

  std::optional<Solution> inner;
  try {
    inner = planar_multicut_exact(planar);
  } catch (const infeasible_error&) {
    return std::nullopt;
  }

  std::optional<Solution> best;
  const std::vector<EdgeId>& pi = ctx.e_pi();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pi.size()); ++mask) {
    std::vector<EdgeId> candidate = inner->edges;
    for (std::size_t i = 0; i < pi.size(); ++i)
      if ((mask >> i) & 1) candidate.push_back(pi[i]);
    std::sort(candidate.begin(), candidate.end());
    if (!verify_multicut(inst, candidate)) continue;
    Solution s{candidate, inst.weight_of(candidate)};
    if (!best || solution_less(s, *best)) best = s;
  }
  return best;
}

}  // namespace multicut
