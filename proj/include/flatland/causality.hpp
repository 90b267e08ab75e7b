#pragma once

// The boundary-to-boundary map of the upward flow on an assembled surface:
// every entry boundary point flows to the first exit point up its fiber.
// The map is continuous except where a fiber runs into a concave tangency,
// and those discontinuities carry enough data to rebuild the trajectory
// graph together with its strip coloring (holography).
//
// Combinatorial representation: boundary arcs are node/segment sequences cut
// at tangency points; the map is a list of continuity pieces, each sending a
// node range of an entry arc onto a node range of an exit arc. A concave
// tangency t over a trivalent vertex w is a relay: the entry point w x 1
// maps to t, and t itself maps on to the exit point w x 3. Convex caps are
// the fixed points of the map.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "assembly.hpp"

namespace flatland {

struct CausalityMap {
  struct Arc {
    bool entry = false;
    bool closed = false;        // boundary circle without tangency points
    std::vector<int> nodes;     // complex-vertex labels, size = edges + 1
    std::vector<int> edges;     // complex-edge labels along the arc
  };
  struct Piece {
    int source_arc = -1;
    int s_begin = 0, s_end = 0;  // node index range on the source arc
    int target_arc = -1;
    int t_begin = 0, t_end = 0;  // image nodes of s_begin resp. s_end
    bool orientation_preserving = true;
  };
  struct Relay {
    int tangency = -1;     // concave tangency point t
    int entry_point = -1;  // z with image t (bottom of the relay fiber)
    int exit_point = -1;   // image of t (top of the relay fiber)
  };

  std::vector<Arc> arcs;
  std::vector<Piece> pieces;
  std::vector<int> fixed_points;  // convex tangencies, image = self
  std::vector<Relay> relays;
  int circles = 0;  // tangency-free annulus components
};

// ---- extraction -----------------------------------------------------------

inline CausalityMap extract_causality(const SurfaceComplex& cx) {
  CausalityMap cm;
  cm.circles = cx.circles;
  if (cx.faces.empty()) return cm;

  std::vector<char> is_tangency(cx.vertices.size(), 0);
  for (int v : cx.concave_vertices) is_tangency[v] = 1;
  for (int v : cx.convex_vertices) is_tangency[v] = 1;

  // exit boundary line of each strip
  std::map<int, int> exit_of_half;
  for (int e = 0; e < (int)cx.edges.size(); ++e) {
    auto& ed = cx.edges[e];
    if (ed.kind == SurfaceComplex::EdgeKind::BoundaryLine && !ed.entry)
      exit_of_half[ed.half_edge] = e;
  }

  for (auto& cyc : boundary_cycles(cx)) {
    int n = (int)cyc.size();
    std::vector<int> vs(n);
    {
      auto &e0 = cx.edges[cyc[0]], &e1 = cx.edges[cyc[1 % n]];
      int shared = (e0.a == e1.a || e0.a == e1.b) ? e0.a : e0.b;
      vs[0] = (e0.a == shared) ? e0.b : e0.a;
      for (int i = 0; i < n - 1; ++i) {
        auto& e = cx.edges[cyc[i]];
        vs[i + 1] = (e.a == vs[i]) ? e.b : e.a;
      }
    }
    std::vector<int> cuts;
    for (int i = 0; i < n; ++i)
      if (is_tangency[vs[i]]) cuts.push_back(i);
    if (cuts.empty()) {
      // rotate so the circle starts at a vertex-fiber endpoint; pieces and
      // image ranges then never wrap around
      int r = 0;
      while (r < n && cx.vertices[vs[r]].at_barycenter) r++;
      if (r == n) throw std::runtime_error("boundary circle without fibers");
      CausalityMap::Arc arc;
      arc.entry = cx.edges[cyc[0]].entry;
      arc.closed = true;
      for (int i = 0; i <= n; ++i) arc.nodes.push_back(vs[(r + i) % n]);
      for (int i = 0; i < n; ++i) arc.edges.push_back(cyc[(r + i) % n]);
      cm.arcs.push_back(std::move(arc));
      continue;
    }
    for (size_t k = 0; k < cuts.size(); ++k) {
      int from = cuts[k], to = cuts[(k + 1) % cuts.size()];
      CausalityMap::Arc arc;
      arc.entry = cx.edges[cyc[from]].entry;
      arc.nodes.push_back(vs[from]);
      for (int i = from; i != to; i = (i + 1) % n) {
        arc.edges.push_back(cyc[i]);
        arc.nodes.push_back(vs[(i + 1) % n]);
      }
      cm.arcs.push_back(std::move(arc));
    }
  }

  // locate every complex edge on its arc
  std::map<int, std::pair<int, int>> edge_at;  // edge -> (arc, segment)
  for (int a = 0; a < (int)cm.arcs.size(); ++a)
    for (int s = 0; s < (int)cm.arcs[a].edges.size(); ++s)
      edge_at[cm.arcs[a].edges[s]] = {a, s};

  auto is_fiber_bottom = [&](int v) {
    return !cx.vertices[v].at_barycenter && cx.vertices[v].level == 1;
  };

  // continuity pieces: runs of entry segments not crossing a fiber bottom
  for (int a = 0; a < (int)cm.arcs.size(); ++a) {
    auto& arc = cm.arcs[a];
    if (!arc.entry) continue;
    int len = (int)arc.edges.size();
    std::vector<int> split;
    if (arc.closed) {
      for (int i = 0; i < len; ++i)
        if (is_fiber_bottom(arc.nodes[i])) split.push_back(i);
      if (split.empty() || split[0] != 0)
        throw std::runtime_error("entry circle not anchored at a fiber");
    } else {
      split.push_back(0);
      for (int i = 1; i < len; ++i)
        if (is_fiber_bottom(arc.nodes[i])) split.push_back(i);
    }
    for (size_t k = 0; k < split.size(); ++k) {
      int i = split[k];
      int j = (k + 1 < split.size()) ? split[k + 1] : len;
      CausalityMap::Piece p;
      p.source_arc = a;
      p.s_begin = i;
      p.s_end = j;
      // image: the exit line of each strip in the run
      int lo = 1 << 30, hi = -1;
      for (int s = i; s < j; ++s) {
        int te = exit_of_half.at(cx.edges[arc.edges[s]].half_edge);
        auto [ta, tseg] = edge_at.at(te);
        if (p.target_arc == -1) p.target_arc = ta;
        if (p.target_arc != ta)
          throw std::runtime_error("piece image spread over several arcs");
        lo = std::min(lo, tseg);
        hi = std::max(hi, tseg + 1);
      }
      if (hi - lo != j - i)
        throw std::runtime_error("piece image not a contiguous range");
      // direction: follow the first strip's endpoint correspondence
      int te = exit_of_half.at(cx.edges[arc.edges[i]].half_edge);
      bool begin_at_barycenter = cx.vertices[arc.nodes[i]].at_barycenter;
      int image = cx.vertices[cx.edges[te].a].at_barycenter ==
                          begin_at_barycenter
                      ? cx.edges[te].a
                      : cx.edges[te].b;
      auto& tnodes = cm.arcs[p.target_arc].nodes;
      if (tnodes[lo] == image) {
        p.t_begin = lo;
        p.t_end = hi;
      } else if (tnodes[hi] == image) {
        p.t_begin = hi;
        p.t_end = lo;
      } else {
        throw std::runtime_error("piece image endpoints inconsistent");
      }
      p.orientation_preserving = p.t_begin < p.t_end;
      cm.pieces.push_back(p);
    }
  }

  // tangency roles
  std::map<int, std::array<int, 3>> fiber_of_vertex;  // graph vertex -> levels
  for (int v = 0; v < (int)cx.vertices.size(); ++v) {
    auto& cv = cx.vertices[v];
    if (!cv.at_barycenter && cv.level >= 1 && cv.level <= 3)
      fiber_of_vertex[cv.graph_item][cv.level - 1] = v;
  }
  for (int t : cx.concave_vertices) {
    auto& f = fiber_of_vertex.at(cx.vertices[t].graph_item);
    cm.relays.push_back({t, f[0], f[2]});
  }
  cm.fixed_points = cx.convex_vertices;
  return cm;
}

// ---- well-formedness --------------------------------------------------------

inline std::vector<std::string> validate(const CausalityMap& cm) {
  std::vector<std::string> out;
  std::set<int> z1;
  for (auto& r : cm.relays) z1.insert(r.entry_point);
  for (int a = 0; a < (int)cm.arcs.size(); ++a) {
    auto& arc = cm.arcs[a];
    if (arc.nodes.size() != arc.edges.size() + 1)
      out.push_back("arc node/segment counts disagree");
    if (!arc.entry) continue;
    // pieces must tile the arc and break exactly at relay entry points
    std::vector<std::pair<int, int>> runs;
    for (auto& p : cm.pieces)
      if (p.source_arc == a) runs.push_back({p.s_begin, p.s_end});
    std::sort(runs.begin(), runs.end());
    int expect = 0;
    for (auto& [b, e] : runs) {
      if (b != expect) out.push_back("pieces do not partition an entry arc");
      for (int i = b + 1; i < e; ++i)
        if (z1.count(arc.nodes[i]))
          out.push_back("piece runs across a discontinuity");
      if (b > 0 || arc.closed)
        if (!z1.count(arc.nodes[b]))
          out.push_back("piece break without a matching relay");
      expect = e;
    }
    if (expect != (int)arc.edges.size())
      out.push_back("pieces do not cover an entry arc");
  }
  // fixed points sit at the shared endpoint of an entry and an exit arc
  for (int z : cm.fixed_points) {
    bool on_entry = false, on_exit = false;
    for (auto& arc : cm.arcs) {
      if (arc.closed || arc.nodes.empty()) continue;
      if (arc.nodes.front() == z || arc.nodes.back() == z)
        (arc.entry ? on_entry : on_exit) = true;
    }
    if (!(on_entry && on_exit))
      out.push_back("fixed point not on both boundary sides");
  }
  return out;
}

// entry-arc nodes where the map jumps; equals the relay entry points
inline std::set<int> discontinuity_points(const CausalityMap& cm) {
  std::set<int> out;
  for (auto& p : cm.pieces) {
    auto& arc = cm.arcs[p.source_arc];
    if (p.s_begin > 0 || arc.closed) out.insert(arc.nodes[p.s_begin]);
  }
  return out;
}

// ---- reconstruction ---------------------------------------------------------

struct TrajectoryGraph {
  TrivalentGraph graph;
  std::vector<std::string> vertex_pattern;  // "121" or "2"
  std::vector<std::string> edge_pattern;    // always "11" in the interior
  // provenance of each half-edge: (piece index, end 0/1)
  std::vector<std::pair<int, int>> half_edge_piece;
};

inline TrajectoryGraph reconstruct(const CausalityMap& cm) {
  TrajectoryGraph tg;
  std::map<int, int> vertex_of_label;
  for (int r = 0; r < (int)cm.relays.size(); ++r) {
    vertex_of_label[cm.relays[r].entry_point] = r;
    vertex_of_label[cm.relays[r].tangency] = r;
    tg.vertex_pattern.push_back("121");
  }
  int base = (int)cm.relays.size();
  for (int f = 0; f < (int)cm.fixed_points.size(); ++f) {
    vertex_of_label[cm.fixed_points[f]] = base + f;
    tg.vertex_pattern.push_back("2");
  }
  tg.graph.circles = cm.circles;
  tg.graph.half_edges = 2 * (int)cm.pieces.size();
  tg.graph.pairing.resize(tg.graph.half_edges);
  tg.graph.stars.assign(tg.vertex_pattern.size(), {});
  for (int p = 0; p < (int)cm.pieces.size(); ++p) {
    auto& pc = cm.pieces[p];
    auto& arc = cm.arcs[pc.source_arc];
    tg.graph.pairing[2 * p] = 2 * p + 1;
    tg.graph.pairing[2 * p + 1] = 2 * p;
    int ends[2] = {arc.nodes[pc.s_begin], arc.nodes[pc.s_end]};
    for (int k = 0; k < 2; ++k) {
      auto it = vertex_of_label.find(ends[k]);
      if (it == vertex_of_label.end())
        throw std::invalid_argument(
            "not a causality map of a traversally generic flow: "
            "piece end at an unmarked point");
      tg.graph.stars[it->second].push_back(2 * p + k);
      tg.half_edge_piece.push_back({p, k});
    }
    tg.edge_pattern.push_back("11");
  }
  for (size_t v = 0; v < tg.graph.stars.size(); ++v) {
    size_t want = tg.vertex_pattern[v] == "121" ? 3 : 1;
    if (tg.graph.stars[v].size() != want)
      throw std::invalid_argument(
          "not a causality map of a traversally generic flow: "
          "wrong number of trajectory germs at a tangency");
  }
  return tg;
}

inline Tricoloring derive_tricoloring(const CausalityMap& cm,
                                      const TrajectoryGraph& tg) {
  std::map<int, const CausalityMap::Relay*> by_entry, by_tangency;
  for (auto& r : cm.relays) {
    by_entry[r.entry_point] = &r;
    by_tangency[r.tangency] = &r;
  }
  std::set<int> fixed(cm.fixed_points.begin(), cm.fixed_points.end());
  Tricoloring col;
  col.color.resize(tg.graph.half_edges, Color::Cap);
  for (int h = 0; h < tg.graph.half_edges; ++h) {
    auto [p, k] = tg.half_edge_piece[h];
    auto& pc = cm.pieces[p];
    int s = cm.arcs[pc.source_arc].nodes[k == 0 ? pc.s_begin : pc.s_end];
    int q = cm.arcs[pc.target_arc].nodes[k == 0 ? pc.t_begin : pc.t_end];
    if (fixed.count(s)) {
      col.color[h] = Color::Cap;
    } else if (auto it = by_entry.find(s); it != by_entry.end()) {
      // germ spans the fiber from the bottom: up to the tangency is the
      // two-low-levels strip, up to the exit point the full-height strip
      if (q == it->second->tangency)
        col.color[h] = Color::A;
      else if (q == it->second->exit_point)
        col.color[h] = Color::C;
      else
        throw std::invalid_argument("fiber correspondence not monotone");
    } else if (auto it2 = by_tangency.find(s); it2 != by_tangency.end()) {
      if (q != it2->second->exit_point)
        throw std::invalid_argument("fiber correspondence not monotone");
      col.color[h] = Color::B;
    } else {
      throw std::invalid_argument("piece end at an unmarked point");
    }
  }
  return col;
}

// ---- colored isomorphism ------------------------------------------------

inline bool colored_isomorphic(const ColoredGraph& g1, const ColoredGraph& g2) {
  int n = g1.graph.vertex_count();
  if (n != g2.graph.vertex_count()) return false;
  if (g1.graph.half_edges != g2.graph.half_edges) return false;
  if (g1.graph.circles != g2.graph.circles) return false;

  using Pair = std::pair<int, int>;
  auto table = [](const ColoredGraph& g) {
    auto at = g.graph.vertex_lookup();
    std::map<Pair, std::multiset<Pair>> m;  // (u,v) u<=v -> color pairs
    for (auto [h1, h2] : g.graph.edges()) {
      int u = at[h1], v = at[h2];
      int c1 = (int)g.coloring.color[h1], c2 = (int)g.coloring.color[h2];
      if (u > v || (u == v && c1 > c2)) {
        std::swap(u, v);
        std::swap(c1, c2);
      }
      m[{u, v}].insert({c1, c2});
    }
    return m;
  };
  auto m1 = table(g1), m2 = table(g2);

  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (g1.graph.stars[i].size() != g2.graph.stars[p[i]].size()) ok = false;
    if (ok) {
      std::map<Pair, std::multiset<Pair>> mapped;
      for (auto& [uv, colors] : m1) {
        int u = p[uv.first], v = p[uv.second];
        bool flip = u > v;
        if (flip) std::swap(u, v);
        for (auto [c1, c2] : colors) {
          if (flip) std::swap(c1, c2);
          if (u == v && c1 > c2) std::swap(c1, c2);
          mapped[{u, v}].insert({c1, c2});
        }
      }
      if (mapped == m2) return true;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// ---- json ---------------------------------------------------------------

inline nlohmann::json causality_to_json(const CausalityMap& cm) {
  nlohmann::json j;
  j["format"] = 1;
  auto arcs = nlohmann::json::array();
  for (auto& a : cm.arcs)
    arcs.push_back({{"entry", a.entry},
                    {"closed", a.closed},
                    {"nodes", a.nodes},
                    {"edges", a.edges}});
  j["arcs"] = arcs;
  auto pieces = nlohmann::json::array();
  for (auto& p : cm.pieces)
    pieces.push_back({{"source_arc", p.source_arc},
                      {"source", {p.s_begin, p.s_end}},
                      {"target_arc", p.target_arc},
                      {"target", {p.t_begin, p.t_end}},
                      {"orientation_preserving", p.orientation_preserving}});
  j["pieces"] = pieces;
  j["fixed_points"] = cm.fixed_points;
  auto relays = nlohmann::json::array();
  for (auto& r : cm.relays)
    relays.push_back({{"tangency", r.tangency},
                      {"entry_point", r.entry_point},
                      {"exit_point", r.exit_point}});
  j["relays"] = relays;
  j["circles"] = cm.circles;
  return j;
}

inline CausalityMap causality_from_json(const nlohmann::json& j) {
  CausalityMap cm;
  for (auto& a : j.at("arcs")) {
    CausalityMap::Arc arc;
    arc.entry = a.at("entry").get<bool>();
    arc.closed = a.at("closed").get<bool>();
    arc.nodes = a.at("nodes").get<std::vector<int>>();
    arc.edges = a.at("edges").get<std::vector<int>>();
    cm.arcs.push_back(std::move(arc));
  }
  for (auto& p : j.at("pieces")) {
    CausalityMap::Piece pc;
    pc.source_arc = p.at("source_arc").get<int>();
    pc.s_begin = p.at("source")[0].get<int>();
    pc.s_end = p.at("source")[1].get<int>();
    pc.target_arc = p.at("target_arc").get<int>();
    pc.t_begin = p.at("target")[0].get<int>();
    pc.t_end = p.at("target")[1].get<int>();
    pc.orientation_preserving = p.at("orientation_preserving").get<bool>();
    cm.pieces.push_back(pc);
  }
  cm.fixed_points = j.at("fixed_points").get<std::vector<int>>();
  for (auto& r : j.at("relays"))
    cm.relays.push_back({r.at("tangency").get<int>(),
                         r.at("entry_point").get<int>(),
                         r.at("exit_point").get<int>()});
  cm.circles = j.at("circles").get<int>();
  return cm;
}

}  // namespace flatland
