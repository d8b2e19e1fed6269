#pragma once

// Instance model and instance/solution file I/O.
//
// File format (line based, '#' comments, whitespace separated):
//   n <count>              vertex count, ids are 0..n-1
//   t <v>                  declares v a terminal
//   e <u> <v> <w|inf> [pi] edge with weight, `pi` marks E_pi membership
//   d <u> <v>              demand pair (both endpoints must be terminals)
//   x <a> <b> <c> <d>      drawing annotation: edge (a,b) crosses edge (c,d)
//   r <v> <v1> <v2> ...    rotation at v (clockwise) for pre-embedded parts

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "multicut/base.hpp"

namespace multicut {

struct Edge {
  VertexId u, v;  // normalized so u < v
  Weight w;
  EdgeId id;  // position in the original file, stable across subinstances

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool touches(VertexId x) const { return x == u || x == v; }
};

using DemandPair = std::pair<VertexId, VertexId>;  // normalized u < v

struct Instance {
  // Active vertex set, sorted. Subinstances shrink it; ids never change.
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::vector<VertexId> terminals;      // sorted
  std::vector<DemandPair> demands;      // sorted, endpoints are terminals
  int n = 0;                            // original universe size

  // Optional annotations carried from the file.
  std::vector<EdgeId> pi_edges;                       // `pi`-marked edges
  std::vector<std::pair<EdgeId, EdgeId>> crossings;   // `x` records, a < b
  std::map<VertexId, std::vector<VertexId>> rotations;  // `r` records

  int t() const { return static_cast<int>(terminals.size()); }

  bool is_terminal(VertexId v) const {
    return std::binary_search(terminals.begin(), terminals.end(), v);
  }

  bool has_vertex(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }

  const Edge* find_edge(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    for (const Edge& e : edges)
      if (e.u == u && e.v == v) return &e;
    return nullptr;
  }

  const Edge& edge_by_id(EdgeId id) const {
    for (const Edge& e : edges)
      if (e.id == id) return e;
    throw precondition_error("unknown edge id " + std::to_string(id));
  }

  bool has_edge_id(EdgeId id) const {
    for (const Edge& e : edges)
      if (e.id == id) return true;
    return false;
  }

  bool unweighted() const {
    for (const Edge& e : edges)
      if (e.w != 1) return false;
    return true;
  }

  Weight weight_of(const std::vector<EdgeId>& ids) const {
    Weight w = 0;
    for (EdgeId id : ids) w = w_add(w, edge_by_id(id).w);
    return w;
  }

  VSet vertex_set() const { return list_to_vset(vertices); }

  // Induced demand graph H[V'] (labelled induced subgraph of H).
  std::vector<DemandPair> induced_demands(VSet keep) const {
    std::vector<DemandPair> out;
    for (const DemandPair& d : demands)
      if (vhas(keep, d.first) && vhas(keep, d.second)) out.push_back(d);
    return out;
  }

  // Subinstance with the given edges removed; vertices unchanged.
  Instance without_edges(const std::vector<EdgeId>& drop) const {
    Instance out = *this;
    out.edges.clear();
    std::set<EdgeId> dropped(drop.begin(), drop.end());
    for (const Edge& e : edges)
      if (!dropped.count(e.id)) out.edges.push_back(e);
    out.pi_edges.clear();
    for (EdgeId id : pi_edges)
      if (!dropped.count(id)) out.pi_edges.push_back(id);
    out.crossings.clear();
    for (auto [a, b] : crossings)
      if (!dropped.count(a) && !dropped.count(b)) out.crossings.emplace_back(a, b);
    return out;
  }

  // Subinstance with the given vertices removed (and their edges, terminals,
  // demands).
  Instance without_vertices(VSet drop) const {
    Instance out = *this;
    out.vertices.clear();
    for (VertexId v : vertices)
      if (!vhas(drop, v)) out.vertices.push_back(v);
    out.edges.clear();
    std::vector<EdgeId> dead;
    for (const Edge& e : edges) {
      if (vhas(drop, e.u) || vhas(drop, e.v))
        dead.push_back(e.id);
      else
        out.edges.push_back(e);
    }
    std::set<EdgeId> dead_set(dead.begin(), dead.end());
    out.pi_edges.clear();
    for (EdgeId id : pi_edges)
      if (!dead_set.count(id)) out.pi_edges.push_back(id);
    out.crossings.clear();
    for (auto [a, b] : crossings)
      if (!dead_set.count(a) && !dead_set.count(b))
        out.crossings.emplace_back(a, b);
    out.terminals.clear();
    for (VertexId v : terminals)
      if (!vhas(drop, v)) out.terminals.push_back(v);
    out.demands.clear();
    for (const DemandPair& d : demands)
      if (!vhas(drop, d.first) && !vhas(drop, d.second))
        out.demands.push_back(d);
    out.rotations.clear();
    return out;
  }

  // Restriction to one set of vertices (used for per-component recursion).
  Instance induced(VSet keep) const {
    VSet all = 0;
    for (VertexId v : vertices) all |= vbit(v);
    return without_vertices(all & ~keep);
  }

  // Canonical key for memoization.
  std::string canonical_key() const {
    std::ostringstream os;
    for (VertexId v : vertices) os << v << ',';
    os << '|';
    for (const Edge& e : edges) os << e.id << ':' << e.w << ',';
    os << '|';
    for (VertexId v : terminals) os << v << ',';
    os << '|';
    for (const DemandPair& d : demands) os << d.first << '-' << d.second << ',';
    return os.str();
  }
};

struct Solution {
  std::vector<EdgeId> edges;  // sorted ascending
  Weight weight = 0;

  // S0: the solution without the planarizing edges.
  std::vector<EdgeId> minus(const std::vector<EdgeId>& pi) const {
    std::vector<EdgeId> out;
    std::set<EdgeId> drop(pi.begin(), pi.end());
    for (EdgeId id : edges)
      if (!drop.count(id)) out.push_back(id);
    return out;
  }
};

// Deterministic order on candidate solutions: weight, then edge-id list.
inline bool solution_less(const Solution& a, const Solution& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.edges < b.edges;
}

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

inline int parse_int(const std::string& tok, int lineno) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw parse_error(lineno, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  Instance inst;
  bool have_n = false;
  std::set<VertexId> term_set;
  std::set<std::pair<VertexId, VertexId>> edge_set;
  std::set<DemandPair> demand_set;
  std::vector<std::pair<std::array<int, 4>, int>> xrecords;  // with line no

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto need_vertex = [&](int v, int ln) {
    if (!have_n) throw parse_error(ln, "record before the n line");
    if (v < 0 || v >= inst.n)
      throw parse_error(ln, "vertex " + std::to_string(v) + " out of range");
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const std::string& kind = toks[0];
    if (kind == "n") {
      if (toks.size() != 2) throw parse_error(lineno, "n takes one argument");
      if (have_n) throw parse_error(lineno, "duplicate n line");
      inst.n = detail::parse_int(toks[1], lineno);
      if (inst.n < 0) throw parse_error(lineno, "negative vertex count");
      have_n = true;
      for (VertexId v = 0; v < inst.n; ++v) inst.vertices.push_back(v);
    } else if (kind == "t") {
      if (toks.size() != 2) throw parse_error(lineno, "t takes one argument");
      int v = detail::parse_int(toks[1], lineno);
      need_vertex(v, lineno);
      term_set.insert(v);
    } else if (kind == "e") {
      if (toks.size() != 4 && toks.size() != 5)
        throw parse_error(lineno, "e takes 3 or 4 arguments");
      int u = detail::parse_int(toks[1], lineno);
      int v = detail::parse_int(toks[2], lineno);
      need_vertex(u, lineno);
      need_vertex(v, lineno);
      if (u == v) throw parse_error(lineno, "self-loop edge");
      Weight w;
      if (toks[3] == "inf") {
        w = kInfWeight;
      } else {
        int wi = detail::parse_int(toks[3], lineno);
        if (wi < 0) throw parse_error(lineno, "negative edge weight");
        w = wi;
      }
      if (u > v) std::swap(u, v);
      if (!edge_set.insert({u, v}).second)
        throw parse_error(lineno, "duplicate edge " + std::to_string(u) + " " +
                                      std::to_string(v));
      EdgeId id = static_cast<EdgeId>(inst.edges.size());
      inst.edges.push_back(Edge{u, v, w, id});
      if (toks.size() == 5) {
        if (toks[4] != "pi") throw parse_error(lineno, "unknown edge flag");
        inst.pi_edges.push_back(id);
      }
    } else if (kind == "d") {
      if (toks.size() != 3) throw parse_error(lineno, "d takes two arguments");
      int u = detail::parse_int(toks[1], lineno);
      int v = detail::parse_int(toks[2], lineno);
      need_vertex(u, lineno);
      need_vertex(v, lineno);
      if (u == v) throw parse_error(lineno, "demand joins a terminal to itself");
      if (!term_set.count(u) || !term_set.count(v))
        throw parse_error(lineno, "demand endpoint not terminal");
      if (u > v) std::swap(u, v);
      demand_set.insert({u, v});
    } else if (kind == "x") {
      if (toks.size() != 5) throw parse_error(lineno, "x takes four arguments");
      std::array<int, 4> q;
      for (int i = 0; i < 4; ++i) {
        q[i] = detail::parse_int(toks[1 + i], lineno);
        need_vertex(q[i], lineno);
      }
      xrecords.push_back({q, lineno});
    } else if (kind == "r") {
      if (toks.size() < 2) throw parse_error(lineno, "r needs a vertex");
      int v = detail::parse_int(toks[1], lineno);
      need_vertex(v, lineno);
      std::vector<VertexId> order;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        int u = detail::parse_int(toks[i], lineno);
        need_vertex(u, lineno);
        order.push_back(u);
      }
      if (inst.rotations.count(v))
        throw parse_error(lineno, "duplicate rotation for vertex " +
                                      std::to_string(v));
      inst.rotations[v] = order;
    } else {
      throw parse_error(lineno, "unknown record '" + kind + "'");
    }
  }
  if (!have_n) throw parse_error("missing n line");

  inst.terminals.assign(term_set.begin(), term_set.end());
  inst.demands.assign(demand_set.begin(), demand_set.end());

  // Resolve x records against edge ids once all edges are known.
  std::set<std::pair<EdgeId, EdgeId>> xset;
  for (auto& [q, ln] : xrecords) {
    const Edge* e1 = inst.find_edge(q[0], q[1]);
    const Edge* e2 = inst.find_edge(q[2], q[3]);
    if (!e1 || !e2) throw parse_error(ln, "crossing refers to a missing edge");
    if (e1->id == e2->id) throw parse_error(ln, "edge crossing itself");
    if (e1->touches(e2->u) || e1->touches(e2->v))
      throw parse_error(ln, "crossing edges share an endpoint");
    EdgeId a = std::min(e1->id, e2->id), b = std::max(e1->id, e2->id);
    xset.insert({a, b});
  }
  inst.crossings.assign(xset.begin(), xset.end());
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "n " << inst.n << '\n';
  for (VertexId v : inst.terminals) os << "t " << v << '\n';
  std::set<EdgeId> pi(inst.pi_edges.begin(), inst.pi_edges.end());
  for (const Edge& e : inst.edges) {
    os << "e " << e.u << ' ' << e.v << ' ';
    if (is_inf(e.w))
      os << "inf";
    else
      os << e.w;
    if (pi.count(e.id)) os << " pi";
    os << '\n';
  }
  for (const DemandPair& d : inst.demands)
    os << "d " << d.first << ' ' << d.second << '\n';
  for (auto [a, b] : inst.crossings) {
    const Edge& e1 = inst.edge_by_id(a);
    const Edge& e2 = inst.edge_by_id(b);
    os << "x " << e1.u << ' ' << e1.v << ' ' << e2.u << ' ' << e2.v << '\n';
  }
  for (const auto& [v, order] : inst.rotations) {
    os << "r " << v;
    for (VertexId u : order) os << ' ' << u;
    os << '\n';
  }
  return os.str();
}

// Solution output: `weight <W>` then one `cut <u> <v>` per edge, sorted.
inline std::string serialize_solution(const Instance& inst, const Solution& s) {
  std::vector<std::pair<VertexId, VertexId>> cuts;
  for (EdgeId id : s.edges) {
    const Edge& e = inst.edge_by_id(id);
    cuts.emplace_back(e.u, e.v);
  }
  std::sort(cuts.begin(), cuts.end());
  std::ostringstream os;
  os << "weight " << s.weight << '\n';
  for (auto [u, v] : cuts) os << "cut " << u << ' ' << v << '\n';
  return os.str();
}

inline Solution parse_solution(const Instance& inst, const std::string& text) {
  Solution s;
  bool have_weight = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "weight") {
      if (toks.size() != 2 || have_weight)
        throw parse_error(lineno, "bad weight line");
      s.weight = std::stoll(toks[1]);
      have_weight = true;
    } else if (toks[0] == "cut") {
      if (toks.size() != 3) throw parse_error(lineno, "bad cut line");
      int u = detail::parse_int(toks[1], lineno);
      int v = detail::parse_int(toks[2], lineno);
      const Edge* e = inst.find_edge(u, v);
      if (!e) throw parse_error(lineno, "cut edge not in instance");
      s.edges.push_back(e->id);
    } else {
      throw parse_error(lineno, "unknown record '" + toks[0] + "'");
    }
  }
  if (!have_weight) throw parse_error("missing weight line");
  std::sort(s.edges.begin(), s.edges.end());
  s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
  return s;
}

}  // namespace multicut
