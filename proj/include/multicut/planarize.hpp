#pragma once

// Planarizing-edge-set search and the near-planar instance context.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/cuts.hpp"
#include "multicut/embedding.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"

namespace multicut {

inline constexpr int kDefaultPiMax = 4;

// Minimum-cardinality edge set whose deletion leaves a planar graph, by
// subset enumeration in increasing size (subsets of each size in
// lexicographic edge order, so ties are deterministic). nullopt when no
// set of size <= pi_max works.
inline std::optional<std::vector<EdgeId>> find_planarizing_edges(
    const Instance& inst, int pi_max = kDefaultPiMax) {
  GraphView g = GraphView::of(inst);
  int m = g.edge_count();
  std::vector<EdgeId> ids;
  for (const Edge& e : g.edges()) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  for (int k = 0; k <= pi_max; ++k) {
    if (k > m) break;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<EdgeId> drop;
      for (int i : idx) drop.push_back(ids[i]);
      if (is_planar(GraphView::of_without(inst, drop))) return drop;
      int j = k - 1;
      while (j >= 0 && idx[j] == m - k + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
    if (k == 0 && m == 0) break;
  }
  return std::nullopt;
}

// A near-planar instance: the instance together with the deleted edge set
// E_pi, its endpoint set W, and the planar remainder G0. Carries a cache
// for the cardinality cut values used by the state machinery.
class KPlanarContext {
 public:
  KPlanarContext(const Instance& inst, std::vector<EdgeId> e_pi)
      : inst_(&inst), e_pi_(std::move(e_pi)) {
    std::sort(e_pi_.begin(), e_pi_.end());
    g_ = GraphView::of(inst);
    g0_ = GraphView::of_without(inst, e_pi_);
    if (!is_planar(g0_))
      throw precondition_error("remainder after deleting E_pi is not planar");
    w_ = 0;
    for (EdgeId id : e_pi_) {
      const Edge& e = inst.edge_by_id(id);
      w_ |= vbit(e.u) | vbit(e.v);
    }
    wt_ = w_ | list_to_vset(inst.terminals);
  }

  const Instance& instance() const { return *inst_; }
  const GraphView& g() const { return g_; }
  const GraphView& g0() const { return g0_; }
  const std::vector<EdgeId>& e_pi() const { return e_pi_; }
  int pi() const { return static_cast<int>(e_pi_.size()); }
  int t() const { return inst_->t(); }
  VSet w() const { return w_; }
  VSet wt() const { return wt_; }  // W union T

  // Fatness threshold pi(t+1)+1 of the current instance.
  int fat_threshold() const { return pi() * (t() + 1) + 1; }

  // lambda_{G0}(a, b), cached; zero when either side is empty. The cache
  // is guarded so a context can be shared across threads.
  int lambda0(VSet a, VSet b) const {
    if (a == 0 || b == 0) return 0;
    auto key = std::make_pair(a, b);
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = lambda_cache_.find(key);
      if (it != lambda_cache_.end()) return it->second;
    }
    int v = lambda(g0_, a, b);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    lambda_cache_.emplace(key, v);
    return v;
  }

 private:
  const Instance* inst_;
  std::vector<EdgeId> e_pi_;
  GraphView g_, g0_;
  VSet w_ = 0, wt_ = 0;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<VSet, VSet>, int> lambda_cache_;
};

}  // namespace multicut
