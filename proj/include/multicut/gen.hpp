#pragma once

// Deterministic instance generator: a random planar base grown by
// incremental insertion, optionally topped with extra (pi-marked) edges or
// genuinely crossing chord pairs placed inside faces of the canonical
// embedding, plus sampled terminals and demands.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "multicut/base.hpp"
#include "multicut/embedding.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"

namespace multicut {

struct GenParams {
  std::uint64_t seed = 1;
  int n = 8;
  double density = 1.0;  // fraction of the planar edge budget 3n-6
  int t = 3;
  int pi = 0;
  int crossings = 0;
  bool weighted = false;
  int w_max = 5;
  double inf_prob = 0.0;  // chance of an INF weight on a weighted edge
  int max_edges = 0;      // optional hard cap on finite edges (0 = none)
};

inline Instance generate_instance(const GenParams& p) {
  if (p.n < 2 || p.n > 64) throw precondition_error("generator needs 2 <= n <= 64");
  if (p.t < 0 || p.t > p.n) throw precondition_error("bad terminal count");
  if (p.pi < 0 || p.pi > 4) throw precondition_error("pi out of range (0..4)");
  if (p.crossings < 0 || p.crossings > 3)
    throw precondition_error("crossings out of range (0..3)");
  Rng rng(p.seed);

  Instance inst;
  inst.n = p.n;
  for (VertexId v = 0; v < p.n; ++v) inst.vertices.push_back(v);

  // Random spanning tree keeps the base connected.
  std::vector<std::pair<VertexId, VertexId>> chosen;
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<VertexId> order;
  for (VertexId v = 0; v < p.n; ++v) order.push_back(v);
  rng.shuffle(order);
  for (int i = 1; i < p.n; ++i) {
    VertexId u = order[rng.below(i)];
    VertexId v = order[i];
    auto e = std::minmax(u, v);
    chosen.emplace_back(e.first, e.second);
    used.insert({e.first, e.second});
  }
  // Grow toward the density target, keeping the base planar. Crossing
  // chords need one face each with at least four distinct corners: the
  // base stays sparse enough to leave big faces and dense enough to have
  // one face per requested pair.
  int cap = std::max(p.n - 1, 3 * p.n - 6);
  int target = static_cast<int>(p.density * cap);
  if (p.max_edges > 0) target = std::min(target, p.max_edges - 2 * p.crossings);
  if (p.crossings > 0) {
    target = std::min(target, cap - 3 * p.crossings);
    target = std::max(target, p.n - 1 + p.crossings);
  }
  int budget = std::min(cap, std::max(p.n - 1, target));
  int attempts = 8 * p.n * p.n;
  while (static_cast<int>(chosen.size()) < budget && attempts-- > 0) {
    VertexId u = static_cast<VertexId>(rng.below(p.n));
    VertexId v = static_cast<VertexId>(rng.below(p.n));
    if (u == v) continue;
    auto e = std::minmax(u, v);
    if (used.count({e.first, e.second})) continue;
    std::vector<Edge> trial;
    for (std::size_t i = 0; i < chosen.size(); ++i)
      trial.push_back(Edge{chosen[i].first, chosen[i].second, 1,
                           static_cast<EdgeId>(i)});
    trial.push_back(Edge{e.first, e.second, 1,
                         static_cast<EdgeId>(chosen.size())});
    if (!is_planar(GraphView(p.n, trial, inst.vertex_set()))) continue;
    chosen.emplace_back(e.first, e.second);
    used.insert({e.first, e.second});
  }

  auto weight_for = [&]() -> Weight {
    if (!p.weighted) return 1;
    if (p.inf_prob > 0 && rng.chance(p.inf_prob)) return kInfWeight;
    return rng.range(1, p.w_max);
  };
  for (auto [u, v] : chosen)
    inst.edges.push_back(Edge{u, v, weight_for(),
                              static_cast<EdgeId>(inst.edges.size())});

  // Extra pi-marked edges on top of the planar base.
  int added_pi = 0;
  attempts = 8 * p.n * p.n;
  while (added_pi < p.pi && attempts-- > 0) {
    VertexId u = static_cast<VertexId>(rng.below(p.n));
    VertexId v = static_cast<VertexId>(rng.below(p.n));
    if (u == v) continue;
    auto e = std::minmax(u, v);
    if (used.count({e.first, e.second})) continue;
    used.insert({e.first, e.second});
    EdgeId id = static_cast<EdgeId>(inst.edges.size());
    inst.edges.push_back(Edge{e.first, e.second, weight_for(), id});
    inst.pi_edges.push_back(id);
    ++added_pi;
  }

  // Crossing chord pairs: four distinct vertices in interleaved positions
  // on one face of the canonical base embedding, one pair per face so the
  // recorded crossings are exactly the drawn ones.
  if (p.crossings > 0) {
    std::vector<Edge> base;
    for (auto [u, v] : chosen)
      base.push_back(Edge{u, v, 1, static_cast<EdgeId>(base.size())});
    Embedding emb = canonical_embedding(GraphView(p.n, base, inst.vertex_set()));
    std::vector<int> faces;
    for (int r = 0; r < emb.region_count; ++r) faces.push_back(r);
    rng.shuffle(faces);
    int placed = 0;
    for (int r : faces) {
      if (placed == p.crossings) break;
      // Vertex sequence around the region (single-walk regions only, for
      // a clean cyclic order). One pair per face keeps the recorded
      // crossings exactly the drawn ones.
      if (emb.region_walks[r].size() != 1) continue;
      const std::vector<int>& walk = emb.walks[emb.region_walks[r][0]];
      std::vector<VertexId> seq;
      for (int d : walk) seq.push_back(emb.dart_tail(d));
      int len = static_cast<int>(seq.size());
      if (len < 4) continue;
      bool done = false;
      for (int tries = 0; tries < 60 && !done; ++tries) {
        std::vector<int> pos;
        for (int i = 0; i < len; ++i) pos.push_back(i);
        rng.shuffle(pos);
        pos.resize(4);
        std::sort(pos.begin(), pos.end());
        VertexId a = seq[pos[0]], c = seq[pos[1]], b = seq[pos[2]],
                 d = seq[pos[3]];
        std::set<VertexId> distinct{a, b, c, d};
        if (distinct.size() != 4) continue;
        auto e1 = std::minmax(a, b);
        auto e2 = std::minmax(c, d);
        if (used.count({e1.first, e1.second}) ||
            used.count({e2.first, e2.second}) || e1 == e2)
          continue;
        used.insert({e1.first, e1.second});
        used.insert({e2.first, e2.second});
        EdgeId id1 = static_cast<EdgeId>(inst.edges.size());
        inst.edges.push_back(Edge{e1.first, e1.second, weight_for(), id1});
        EdgeId id2 = static_cast<EdgeId>(inst.edges.size());
        inst.edges.push_back(Edge{e2.first, e2.second, weight_for(), id2});
        inst.crossings.emplace_back(std::min(id1, id2), std::max(id1, id2));
        ++placed;
        done = true;
      }
    }
  }

  // Terminals and demands.
  std::vector<VertexId> verts;
  for (VertexId v = 0; v < p.n; ++v) verts.push_back(v);
  rng.shuffle(verts);
  inst.terminals.assign(verts.begin(), verts.begin() + p.t);
  std::sort(inst.terminals.begin(), inst.terminals.end());
  std::set<DemandPair> demand_set;
  if (p.t >= 2) {
    int want = 1 + static_cast<int>(rng.below(
                       static_cast<std::uint64_t>(p.t * (p.t - 1) / 2)));
    int guard = 20 * want;
    while (static_cast<int>(demand_set.size()) < want && guard-- > 0) {
      VertexId a = inst.terminals[rng.below(p.t)];
      VertexId b = inst.terminals[rng.below(p.t)];
      if (a == b) continue;
      demand_set.insert({std::min(a, b), std::max(a, b)});
    }
  }
  inst.demands.assign(demand_set.begin(), demand_set.end());
  return inst;
}

}  // namespace multicut
