#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "multicut/multicut.hpp"

using namespace multicut;
using mt::make_instance;

TEST_CASE("parse: three-vertex path with a demand") {
  Instance inst = parse_instance(
      "# comment\n"
      "n 3\n"
      "t 0\nt 2\n"
      "e 0 1 1\n"
      "e 1 2 1\n"
      "d 0 2\n");
  REQUIRE(inst.n == 3);
  REQUIRE(inst.t() == 2);
  REQUIRE(inst.edges.size() == 2);
  REQUIRE(inst.demands.size() == 1);
  REQUIRE(inst.unweighted());
}

TEST_CASE("parse: demand on a non-terminal is rejected with a line number") {
  try {
    parse_instance("n 3\nt 0\ne 0 1 1\ne 1 2 1\nd 0 2\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    REQUIRE(e.line() == 5);
    REQUIRE(std::string(e.what()).find("demand endpoint not terminal") !=
            std::string::npos);
  }
}

TEST_CASE("parse: duplicate edge, self loop, unknown record") {
  REQUIRE_THROWS_AS(parse_instance("n 2\ne 0 1 1\ne 1 0 2\n"), parse_error);
  REQUIRE_THROWS_AS(parse_instance("n 2\ne 1 1 1\n"), parse_error);
  REQUIRE_THROWS_AS(parse_instance("n 2\nq 0\n"), parse_error);
  REQUIRE_THROWS_AS(parse_instance("t 0\nn 2\n"), parse_error);
}

TEST_CASE("parse: K5 with a crossing record round-trips") {
  std::string text =
      "n 5\n"
      "t 0\nt 1\n";
  for (auto [u, v] : mt::complete_edges(5))
    text += "e " + std::to_string(u) + " " + std::to_string(v) + " 1\n";
  text += "d 0 1\n";
  text += "x 0 2 1 3\n";
  Instance inst = parse_instance(text);
  REQUIRE(inst.crossings.size() == 1);
  Drawing d = drawing_of(inst);
  REQUIRE(d.cr_bar() == 2);

  std::string canon = serialize_instance(inst);
  Instance again = parse_instance(canon);
  REQUIRE(serialize_instance(again) == canon);
  REQUIRE(again.crossings == inst.crossings);
}

TEST_CASE("parse: crossing edges sharing an endpoint are rejected") {
  REQUIRE_THROWS_AS(
      parse_instance("n 4\ne 0 1 1\ne 1 2 1\nx 0 1 1 2\n"), parse_error);
}

TEST_CASE("parse: inf weights survive a round trip") {
  Instance inst = parse_instance("n 2\ne 0 1 inf\n");
  REQUIRE(is_inf(inst.edges[0].w));
  REQUIRE(serialize_instance(inst).find("e 0 1 inf") != std::string::npos);
}

TEST_CASE("parse: rotation records round trip") {
  std::string text =
      "n 4\ne 0 1 1\ne 1 2 1\ne 2 3 1\ne 0 3 1\n"
      "r 0 1 3\nr 1 0 2\nr 2 1 3\nr 3 2 0\n";
  Instance inst = parse_instance(text);
  REQUIRE(inst.rotations.size() == 4);
  REQUIRE(inst.rotations[0] == std::vector<VertexId>({1, 3}));
  std::string canon = serialize_instance(inst);
  REQUIRE(serialize_instance(parse_instance(canon)) == canon);
  Embedding emb =
      canonical_embedding(GraphView::of(inst), inst.rotations);
  REQUIRE(emb.region_count == 2);
}

TEST_CASE("parse/serialize round trip is identity on canonical files") {
  Rng rng(7);
  for (int it = 0; it < 30; ++it) {
    Instance inst = generate_instance(
        GenParams{.seed = static_cast<std::uint64_t>(100 + it),
                  .n = 4 + static_cast<int>(rng.below(6)),
                  .t = 2,
                  .crossings = static_cast<int>(rng.below(2))});
    std::string canon = serialize_instance(inst);
    REQUIRE(serialize_instance(parse_instance(canon)) == canon);
  }
}

TEST_CASE("solution serialization is sorted by endpoints") {
  Instance inst = mt::make_instance(4, {{2, 3}, {0, 1}, {1, 2}});
  Solution s{{0, 2}, 2};
  REQUIRE(serialize_solution(inst, s) == "weight 2\ncut 1 2\ncut 2 3\n");
  Solution back = parse_solution(inst, serialize_solution(inst, s));
  REQUIRE(back.edges == s.edges);
  REQUIRE(back.weight == s.weight);
}

TEST_CASE("saturating weight arithmetic") {
  REQUIRE(w_add(3, 4) == 7);
  REQUIRE(is_inf(w_add(kInfWeight, 1)));
  REQUIRE(is_inf(w_add(kInfWeight / 2 + 1, kInfWeight / 2 + 1)));
}

// --- extended biclique distance -------------------------------------------

namespace {

// Independent validity predicate via the definition: some bipartition of
// the non-isolated remainder must realize exactly the cross edges.
bool brute_is_extended_biclique(const std::vector<VertexId>& verts,
                                const std::vector<DemandPair>& demands) {
  VSet noniso = 0;
  for (const DemandPair& d : demands) noniso |= vbit(d.first) | vbit(d.second);
  auto nodes = vset_to_list(noniso);
  int k = static_cast<int>(nodes.size());
  (void)verts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    VSet side = 0;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1) side |= vbit(nodes[i]);
    std::set<DemandPair> want;
    for (VertexId a : vset_to_list(side))
      for (VertexId b : vset_to_list(noniso & ~side))
        want.insert({std::min(a, b), std::max(a, b)});
    std::set<DemandPair> got(demands.begin(), demands.end());
    if (want == got) return true;
  }
  return demands.empty();
}

int brute_mu(const std::vector<VertexId>& verts,
             const std::vector<DemandPair>& demands) {
  int n = static_cast<int>(verts.size());
  for (int k = 0; k <= n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      VSet x = 0;
      for (int i : idx) x |= vbit(verts[i]);
      std::vector<VertexId> keep;
      for (VertexId v : verts)
        if (!vhas(x, v)) keep.push_back(v);
      std::vector<DemandPair> kept;
      for (const DemandPair& d : demands)
        if (!vhas(x, d.first) && !vhas(x, d.second)) kept.push_back(d);
      if (brute_is_extended_biclique(keep, kept)) return k;
      if (k == 0) break;
      int j = k - 1;
      while (j >= 0 && idx[j] == n - k + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return n;
}

std::vector<DemandPair> pairs(std::vector<std::pair<int, int>> ps) {
  std::vector<DemandPair> out;
  for (auto [a, b] : ps) out.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("biclique distance: K_{2,3} is already a biclique") {
  std::vector<VertexId> verts{0, 1, 2, 3, 4};
  auto demands =
      pairs({{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
  auto dec = extended_biclique_distance(verts, demands);
  REQUIRE(dec.mu == 0);
  REQUIRE(dec.x.empty());
}

TEST_CASE("biclique distance: K3 needs one deletion") {
  std::vector<VertexId> verts{0, 1, 2};
  auto demands = pairs({{0, 1}, {1, 2}, {0, 2}});
  auto dec = extended_biclique_distance(verts, demands);
  REQUIRE(dec.mu == 1);
  REQUIRE(dec.mu == brute_mu(verts, demands));
  REQUIRE(dec.x == std::vector<VertexId>{0});  // lexicographically smallest
}

TEST_CASE("biclique distance: edgeless graph is all isolated") {
  std::vector<VertexId> verts{0, 1, 2, 3};
  auto dec = extended_biclique_distance(verts, {});
  REQUIRE(dec.mu == 0);
  REQUIRE(dec.isolated.size() == 4);
  REQUIRE(dec.b1.empty());
  REQUIRE(dec.b2.empty());
}

TEST_CASE("biclique distance: matches brute force and mu <= t") {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + static_cast<int>(rng.below(6));
    std::vector<VertexId> verts;
    for (int v = 0; v < n; ++v) verts.push_back(v);
    std::vector<DemandPair> demands;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.chance(0.4)) demands.emplace_back(a, b);
    auto dec = extended_biclique_distance(verts, demands);
    REQUIRE(dec.mu == brute_mu(verts, demands));
    REQUIRE(dec.mu <= n);
    // mu == 0 iff already an extended biclique.
    REQUIRE((dec.mu == 0) == brute_is_extended_biclique(verts, demands));
    // Decomposition is valid: X removal leaves the described structure.
    VSet x = list_to_vset(dec.x);
    std::vector<VertexId> keep;
    for (VertexId v : verts)
      if (!vhas(x, v)) keep.push_back(v);
    std::vector<DemandPair> kept;
    for (const DemandPair& d : demands)
      if (!vhas(x, d.first) && !vhas(x, d.second)) kept.push_back(d);
    REQUIRE(brute_is_extended_biclique(keep, kept));
  }
}

TEST_CASE("biclique distance: monotone under induced subgraphs") {
  Rng rng(13);
  for (int it = 0; it < 60; ++it) {
    int n = 2 + static_cast<int>(rng.below(5));
    std::vector<VertexId> verts;
    for (int v = 0; v < n; ++v) verts.push_back(v);
    std::vector<DemandPair> demands;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.chance(0.5)) demands.emplace_back(a, b);
    int mu = extended_biclique_distance(verts, demands).mu;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<VertexId> sub;
      for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1) sub.push_back(v);
      std::vector<DemandPair> subd;
      for (const DemandPair& d : demands)
        if (((mask >> d.first) & 1) && ((mask >> d.second) & 1))
          subd.push_back(d);
      REQUIRE(extended_biclique_distance(sub, subd).mu <= mu);
    }
  }
}

TEST_CASE("induced demands") {
  Instance inst = make_instance(4, mt::path_edges(4), {0, 1, 2},
                                {{0, 1}, {1, 2}, {0, 2}});
  auto sub = inst.induced_demands(vbit(0) | vbit(1));
  REQUIRE(sub == std::vector<DemandPair>{{0, 1}});
  REQUIRE(inst.induced_demands(vbit(3)).empty());
  Instance k22 = make_instance(4, {}, {0, 1, 2, 3},
                               {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  auto drop = k22.induced_demands(vbit(0) | vbit(2) | vbit(3));
  REQUIRE(drop == std::vector<DemandPair>({{0, 2}, {0, 3}}));
}
