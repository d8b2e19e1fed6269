#pragma once

// The unweighted near-planar driver: per-instance branching over states
// and the recursion over extended subinstances and components.

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/cuts.hpp"
#include "multicut/instance.hpp"
#include "multicut/oracle.hpp"
#include "multicut/planarize.hpp"
#include "multicut/states.hpp"

namespace multicut {

struct SolveOptions {
  int pi_max = kDefaultPiMax;
  long max_state_nodes = 500000;   // guard per branch_instance call
  long max_tree_nodes = 100000;    // guard over the whole recursion
  std::ostream* trace = nullptr;
  int trace_depth = 0;
};

namespace detail {

inline void trace_line(const SolveOptions& opts, const std::string& line) {
  if (!opts.trace) return;
  for (int i = 0; i < opts.trace_depth; ++i) *opts.trace << "  ";
  *opts.trace << line << '\n';
}

inline void trace_state(const SolveOptions& opts, const State& st,
                        const char* action) {
  if (!opts.trace) return;
  std::ostringstream os;
  os << "state κ=" << st.kappa << " τ=" << st.tau
     << " kinds=" << st.kind_counts() << " action=" << action;
  trace_line(opts, os.str());
}

}  // namespace detail

struct BranchOutcome {
  std::optional<Solution> candidate;
  std::vector<ExtendedSubinstance> subs;
};

// One round of the branching algorithm on a connected unweighted
// near-planar instance: explore states from all initial partitions of
// W union T until complete, folding no-thin leaves into a candidate and
// thin leaves into extended subinstances.
inline BranchOutcome branch_instance(const KPlanarContext& ctx,
                                     const SolveOptions& opts = {}) {
  const Instance& inst = ctx.instance();
  if (!GraphView::of(inst).is_connected())
    throw precondition_error("branch_instance needs a connected instance");
  if (!inst.unweighted())
    throw precondition_error("branch_instance needs unit weights");

  BranchOutcome out;
  if (inst.demands.empty()) {
    out.candidate = Solution{{}, 0};
    return out;
  }
  std::vector<State> queue = enumerate_initial_states(ctx);
  std::set<std::string> seen;
  std::set<std::string> sub_seen;
  long nodes = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    State st = queue[qi];
    if (!seen.insert(st.key()).second) continue;
    if (++nodes > opts.max_state_nodes)
      throw internal_error("state search exceeded its node guard");
    if (!is_complete(ctx, st)) {
      if (!is_relevant(ctx, st)) {
        detail::trace_state(opts, st, "relevant");
        queue.push_back(make_relevant(ctx, st));
      } else {
        detail::trace_state(opts, st, "branch");
        for (State& child : branch_incomplete(ctx, st))
          queue.push_back(std::move(child));
      }
      continue;
    }
    if (st.has_thin()) {
      detail::trace_state(opts, st, "thin");
      auto sub = handle_thin_complete(ctx, st);
      if (!sub) continue;  // invalid complete state, prune
      std::ostringstream key;
      for (EdgeId id : sub->s_prime) key << id << ',';
      key << '|' << sub->sub.canonical_key();
      if (sub_seen.insert(key.str()).second)
        out.subs.push_back(std::move(*sub));
    } else {
      detail::trace_state(opts, st, "nothin");
      auto cand = solve_no_thin_complete(ctx, st);
      if (cand && (!out.candidate || solution_less(*cand, *out.candidate)))
        out.candidate = cand;
    }
  }
  for (const ExtendedSubinstance& sub : out.subs) {
    auto sub_pi = find_planarizing_edges(sub.sub, opts.pi_max);
    check(sub_pi.has_value() &&
              static_cast<int>(sub_pi->size()) + sub.sub.t() <
                  ctx.pi() + ctx.t(),
          "subinstance does not shrink the recursion measure");
  }
  return out;
}

namespace detail {

class KPlanarSolver {
 public:
  explicit KPlanarSolver(const SolveOptions& opts) : opts_(opts) {}

  Solution solve(const Instance& inst, int measure_bound) {
    if (++nodes_ > opts_.max_tree_nodes)
      throw internal_error("search tree exceeded its node guard");
    if (inst.demands.empty()) return Solution{{}, 0};
    std::string key = inst.canonical_key();
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    GraphView g = GraphView::of(inst);
    Solution result;
    if (!g.is_connected()) {
      trace_line(opts_, "split into components");
      auto comp = g.components();
      int ncomp = 0;
      for (int c : comp) ncomp = std::max(ncomp, c + 1);
      result.weight = 0;
      ++opts_.trace_depth;
      for (int c = 0; c < ncomp; ++c) {
        VSet verts = 0;
        for (VertexId v = 0; v < g.n(); ++v)
          if (comp[v] == c) verts |= vbit(v);
        Instance sub = inst.induced(verts);
        if (sub.demands.empty()) continue;  // hosts no demand, dropped
        Solution r = solve(sub, measure_bound);
        for (EdgeId id : r.edges) result.edges.push_back(id);
        result.weight = w_add(result.weight, r.weight);
      }
      --opts_.trace_depth;
      std::sort(result.edges.begin(), result.edges.end());
    } else {
      auto e_pi = find_planarizing_edges(inst, opts_.pi_max);
      if (!e_pi)
        throw precondition_error(
            "instance is not planarizable within the pi bound");
      int measure = static_cast<int>(e_pi->size()) + inst.t();
      check(measure < measure_bound,
            "recursion measure failed to decrease strictly");
      KPlanarContext ctx(inst, *e_pi);
      {
        std::ostringstream os;
        os << "branch pi=" << ctx.pi() << " t=" << ctx.t()
           << " m=" << inst.edges.size();
        trace_line(opts_, os.str());
      }
      ++opts_.trace_depth;
      BranchOutcome outcome = branch_instance(ctx, opts_);
      std::optional<Solution> best = outcome.candidate;
      for (const ExtendedSubinstance& sub : outcome.subs) {
        Solution inner = solve(sub.sub, measure);
        std::vector<EdgeId> combined = sub.s_prime;
        for (EdgeId id : inner.edges) combined.push_back(id);
        std::sort(combined.begin(), combined.end());
        combined.erase(std::unique(combined.begin(), combined.end()),
                       combined.end());
        if (!verify_multicut(inst, combined)) continue;
        Solution s{combined, inst.weight_of(combined)};
        if (!best || solution_less(s, *best)) best = s;
      }
      --opts_.trace_depth;
      check(best.has_value(), "branching produced no feasible candidate");
      result = *best;
    }
    check(verify_multicut(inst, result.edges),
          "solver produced a non-multicut");
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  SolveOptions opts_;
  std::map<std::string, Solution> memo_;
  long nodes_ = 0;
};

}  // namespace detail

// Exact minimum multicut for unweighted instances planarizable by deleting
// at most pi_max edges.
inline Solution solve_kplanar(const Instance& inst,
                              const SolveOptions& opts = {}) {
  if (!inst.unweighted())
    throw precondition_error("kplanar solver requires unit weights");
  detail::KPlanarSolver solver(opts);
  int bound = opts.pi_max + inst.t() + 1;
  return solver.solve(inst, bound);
}

}  // namespace multicut
