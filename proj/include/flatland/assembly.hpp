#pragma once

// Builds the strip surface attached to a tricolored graph inside G x (0,4),
// as an explicit polygonal complex, then classifies its topology and reads
// off the flow annotations (tangency points, entry/exit boundary arcs).
//
// Strip model over a half-edge [barycenter, w] with the flow pointing up in
// the u coordinate. At the barycenter the strip end is the interval [2,3];
// at a trivalent vertex the end depends on the color:
//   A: [1,2]    B: [2,3]    C: [1,3], subdivided at level 2.
// A univalent vertex closes its strip with a cap whose boundary lines meet
// at level 2 (local model u^2 - x: a convex tangency). Trivalent vertices
// carry a concave tangency at level 2.

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flowgraph.hpp"

namespace flatland {

struct SurfaceComplex {
  struct Vertex {
    bool at_barycenter = false;
    int graph_item = -1;  // edge index if barycenter, else graph vertex id
    int level = 0;        // u-level in {1,2,3}
  };
  enum class EdgeKind { Vertical, BoundaryLine, LevelLine };
  struct Edge {
    int a = -1, b = -1;
    EdgeKind kind = EdgeKind::Vertical;
    bool entry = false;   // boundary lines only: flow enters here (lower side)
    int half_edge = -1;   // owning strip, -1 for shared vertical edges
  };
  struct Face {
    std::vector<int> verts;  // cyclic
    std::vector<int> edges;  // edges[i] joins verts[i], verts[i+1]
    int half_edge = -1;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  int circles = 0;  // vertexless annulus components, no cells

  // concave (trivalent) and convex (univalent) tangency complex-vertices
  std::vector<int> concave_vertices;
  std::vector<int> convex_vertices;
};

struct SurfaceClass {
  int euler = 0;
  bool orientable = true;
  int genus = 0;  // handles if orientable, crosscaps if not
  int boundary_components = 0;
};

struct TangencyCensus {
  std::vector<std::pair<int, int>> concave_points;  // (graph vertex, cx vertex)
  std::vector<std::pair<int, int>> convex_points;
  int entry_arcs = 0;
  int exit_arcs = 0;
  int entry_circles = 0;
  int exit_circles = 0;
};

// ---- assemble ---------------------------------------------------------------

inline SurfaceComplex assemble(const TrivalentGraph& g, const Tricoloring& c) {
  {
    auto bad = validate(g, c);
    if (!bad.empty())
      throw std::invalid_argument("assemble: invalid input: " + bad.front());
  }
  if (g.circles > 0 && !g.stars.empty())
    throw std::invalid_argument(
        "assemble: mixed circle and vertexed components unsupported");

  SurfaceComplex cx;
  cx.circles = g.circles;
  if (g.stars.empty()) return cx;

  auto at = g.vertex_lookup();
  auto ges = g.edges();

  auto add_vertex = [&](bool bary, int item, int level) {
    cx.vertices.push_back({bary, item, level});
    return (int)cx.vertices.size() - 1;
  };
  auto add_edge = [&](int a, int b, SurfaceComplex::EdgeKind k, bool entry,
                      int he) {
    cx.edges.push_back({a, b, k, entry, he});
    return (int)cx.edges.size() - 1;
  };

  // barycenter vertices and fibers
  std::vector<std::array<int, 2>> bv(ges.size());  // levels 2,3
  std::vector<int> bfiber(ges.size());
  std::vector<int> edge_of_half(g.half_edges, -1);
  for (int e = 0; e < (int)ges.size(); ++e) {
    edge_of_half[ges[e].first] = e;
    edge_of_half[ges[e].second] = e;
    bv[e][0] = add_vertex(true, e, 2);
    bv[e][1] = add_vertex(true, e, 3);
    bfiber[e] = add_edge(bv[e][0], bv[e][1], SurfaceComplex::EdgeKind::Vertical,
                         false, -1);
  }

  // graph-vertex level vertices and fibers
  std::vector<std::array<int, 3>> wv(g.vertex_count(), {-1, -1, -1});
  std::vector<std::array<int, 2>> wfiber(g.vertex_count(), {-1, -1});
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.stars[v].size() == 3) {
      for (int l = 0; l < 3; ++l) wv[v][l] = add_vertex(false, v, l + 1);
      wfiber[v][0] = add_edge(wv[v][0], wv[v][1],
                              SurfaceComplex::EdgeKind::Vertical, false, -1);
      wfiber[v][1] = add_edge(wv[v][1], wv[v][2],
                              SurfaceComplex::EdgeKind::Vertical, false, -1);
      cx.concave_vertices.push_back(wv[v][1]);
    } else {
      wv[v][1] = add_vertex(false, v, 2);
      cx.convex_vertices.push_back(wv[v][1]);
    }
  }

  // one strip per half-edge
  for (int h = 0; h < g.half_edges; ++h) {
    int e = edge_of_half[h];
    int w = at[h];
    int B2 = bv[e][0], B3 = bv[e][1];
    using K = SurfaceComplex::EdgeKind;
    if (g.stars[w].size() == 1) {
      int W2 = wv[w][1];
      int lo = add_edge(B2, W2, K::BoundaryLine, true, h);
      int up = add_edge(B3, W2, K::BoundaryLine, false, h);
      cx.faces.push_back({{B2, B3, W2}, {bfiber[e], up, lo}, h});
      continue;
    }
    int W1 = wv[w][0], W2 = wv[w][1], W3 = wv[w][2];
    switch (c.color[h]) {
      case Color::A: {
        int lo = add_edge(B2, W1, K::BoundaryLine, true, h);
        int up = add_edge(B3, W2, K::BoundaryLine, false, h);
        cx.faces.push_back(
            {{B2, B3, W2, W1}, {bfiber[e], up, wfiber[w][0], lo}, h});
        break;
      }
      case Color::B: {
        int lo = add_edge(B2, W2, K::BoundaryLine, true, h);
        int up = add_edge(B3, W3, K::BoundaryLine, false, h);
        cx.faces.push_back(
            {{B2, B3, W3, W2}, {bfiber[e], up, wfiber[w][1], lo}, h});
        break;
      }
      case Color::C: {
        int lo = add_edge(B2, W1, K::BoundaryLine, true, h);
        int up = add_edge(B3, W3, K::BoundaryLine, false, h);
        int mid = add_edge(B2, W2, K::LevelLine, false, h);
        cx.faces.push_back(
            {{B2, B3, W3, W2}, {bfiber[e], up, wfiber[w][1], mid}, h});
        cx.faces.push_back({{B2, W2, W1}, {mid, wfiber[w][0], lo}, h});
        break;
      }
      default:
        throw std::invalid_argument("assemble: Cap color on trivalent star");
    }
  }
  return cx;
}

// ---- classification ---------------------------------------------------------

namespace detail {

// faces incident to each edge, with the direction the face traverses it
// (+1 for a->b, -1 for b->a)
inline std::vector<std::vector<std::pair<int, int>>> edge_faces(
    const SurfaceComplex& cx) {
  std::vector<std::vector<std::pair<int, int>>> ef(cx.edges.size());
  for (int f = 0; f < (int)cx.faces.size(); ++f) {
    auto& face = cx.faces[f];
    int n = (int)face.verts.size();
    for (int i = 0; i < n; ++i) {
      int e = face.edges[i];
      int a = face.verts[i], b = face.verts[(i + 1) % n];
      if (cx.edges[e].a == a && cx.edges[e].b == b)
        ef[e].push_back({f, +1});
      else if (cx.edges[e].a == b && cx.edges[e].b == a)
        ef[e].push_back({f, -1});
      else
        throw std::logic_error("face cycle inconsistent with edge endpoints");
    }
  }
  return ef;
}

}  // namespace detail

inline std::vector<std::vector<int>> boundary_cycles(const SurfaceComplex& cx) {
  auto ef = detail::edge_faces(cx);
  std::vector<int> bedges;
  for (int e = 0; e < (int)cx.edges.size(); ++e) {
    if (ef[e].size() == 1)
      bedges.push_back(e);
    else if (ef[e].size() != 2)
      throw std::runtime_error("not a surface: edge with " +
                               std::to_string(ef[e].size()) + " faces");
  }
  std::map<int, std::vector<int>> at_vertex;
  for (int e : bedges) {
    at_vertex[cx.edges[e].a].push_back(e);
    at_vertex[cx.edges[e].b].push_back(e);
  }
  for (auto& [v, es] : at_vertex)
    if (es.size() != 2)
      throw std::runtime_error("not a surface: boundary vertex of valency " +
                               std::to_string(es.size()));
  std::vector<char> used(cx.edges.size(), 0);
  std::vector<std::vector<int>> cycles;
  for (int e0 : bedges) {
    if (used[e0]) continue;
    std::vector<int> cyc;
    int e = e0, v = cx.edges[e0].a;
    while (!used[e]) {
      used[e] = 1;
      cyc.push_back(e);
      v = (cx.edges[e].a == v) ? cx.edges[e].b : cx.edges[e].a;
      auto& pairv = at_vertex[v];
      e = (pairv[0] == e) ? pairv[1] : pairv[0];
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

inline SurfaceClass classify(const SurfaceComplex& cx) {
  if (cx.faces.empty()) {
    if (cx.circles == 1) return {0, true, 0, 2};  // interval bundle: annulus
    if (cx.circles == 0 && cx.vertices.empty())
      throw std::invalid_argument("classify: empty complex");
    throw std::invalid_argument("classify: disconnected input");
  }
  int V = (int)cx.vertices.size();
  int E = (int)cx.edges.size();
  int F = (int)cx.faces.size();
  SurfaceClass sc;
  sc.euler = V - E + F;

  // orientability: propagate face orientations across interior edges
  auto ef = detail::edge_faces(cx);
  std::vector<int> orient(F, 0);
  sc.orientable = true;
  for (int seed = 0; seed < F; ++seed) {
    if (orient[seed]) continue;
    orient[seed] = 1;
    std::vector<int> todo{seed};
    while (!todo.empty()) {
      int f = todo.back();
      todo.pop_back();
      for (int e : cx.faces[f].edges) {
        if (ef[e].size() != 2) continue;
        auto [f1, d1] = ef[e][0];
        auto [f2, d2] = ef[e][1];
        int g = (f1 == f) ? f2 : f1;
        // consistent iff the two faces traverse the shared edge oppositely
        int needed = (d1 == d2) ? -orient[f] : orient[f];
        if (orient[g] == 0) {
          orient[g] = needed;
          todo.push_back(g);
        } else if (orient[g] != needed) {
          sc.orientable = false;
        }
      }
    }
  }

  sc.boundary_components = (int)boundary_cycles(cx).size();
  if (sc.boundary_components < 1)
    throw std::runtime_error("not a surface with boundary");
  int g2 = 2 - sc.euler - sc.boundary_components;
  if (sc.orientable) {
    if (g2 % 2 != 0) throw std::runtime_error("classification inconsistent");
    sc.genus = g2 / 2;
  } else {
    sc.genus = g2;
  }
  if (sc.genus < 0) throw std::runtime_error("classification inconsistent");
  return sc;
}

// ---- tangency census --------------------------------------------------------

inline TangencyCensus tangency_census(const SurfaceComplex& cx) {
  TangencyCensus tc;
  for (int v : cx.concave_vertices)
    tc.concave_points.push_back({cx.vertices[v].graph_item, v});
  for (int v : cx.convex_vertices)
    tc.convex_points.push_back({cx.vertices[v].graph_item, v});
  if (cx.faces.empty()) {
    // vertexless annulus: one entry circle, one exit circle per component
    tc.entry_circles = cx.circles;
    tc.exit_circles = cx.circles;
    return tc;
  }

  std::vector<char> is_tangency(cx.vertices.size(), 0);
  for (int v : cx.concave_vertices) is_tangency[v] = 1;
  for (int v : cx.convex_vertices) is_tangency[v] = 1;

  for (auto& cyc : boundary_cycles(cx)) {
    // recover the vertex sequence along the cycle
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
    std::vector<int> cuts;  // indices i where vs[i] is a tangency vertex
    for (int i = 0; i < n; ++i)
      if (is_tangency[vs[i]]) cuts.push_back(i);
    if (cuts.empty()) {
      bool entry = cx.edges[cyc[0]].entry;
      for (int e : cyc)
        if (cx.edges[e].entry != entry)
          throw std::runtime_error("mixed boundary circle without tangencies");
      (entry ? tc.entry_circles : tc.exit_circles)++;
      continue;
    }
    // arcs run between consecutive tangency vertices; edge i joins
    // vs[i] -> vs[i+1], so the arc starting at cut k covers edges
    // cuts[k] .. cuts[k+1]-1
    for (size_t k = 0; k < cuts.size(); ++k) {
      int from = cuts[k];
      int to = cuts[(k + 1) % cuts.size()];
      bool entry = cx.edges[cyc[from]].entry;
      for (int i = from; i != to; i = (i + 1) % n)
        if (cx.edges[cyc[i]].entry != entry)
          throw std::runtime_error("mixed entry/exit inside one boundary arc");
      (entry ? tc.entry_arcs : tc.exit_arcs)++;
    }
  }
  return tc;
}

// ---- JSON -------------------------------------------------------------------

inline nlohmann::json surface_to_json(const SurfaceComplex& cx) {
  nlohmann::json j;
  auto vs = nlohmann::json::array();
  for (auto& v : cx.vertices)
    vs.push_back({{"at_barycenter", v.at_barycenter},
                  {"graph_item", v.graph_item},
                  {"level", v.level}});
  j["vertices"] = vs;
  auto es = nlohmann::json::array();
  for (auto& e : cx.edges) {
    const char* k = e.kind == SurfaceComplex::EdgeKind::Vertical ? "vertical"
                    : e.kind == SurfaceComplex::EdgeKind::BoundaryLine
                        ? "boundary-line"
                        : "level-line";
    es.push_back({{"ends", {e.a, e.b}},
                  {"kind", k},
                  {"entry", e.entry},
                  {"half_edge", e.half_edge}});
  }
  j["edges"] = es;
  auto fs = nlohmann::json::array();
  for (auto& f : cx.faces)
    fs.push_back(
        {{"verts", f.verts}, {"edges", f.edges}, {"half_edge", f.half_edge}});
  j["faces"] = fs;
  j["circles"] = cx.circles;
  j["concave_vertices"] = cx.concave_vertices;
  j["convex_vertices"] = cx.convex_vertices;
  return j;
}

inline nlohmann::json class_to_json(const SurfaceClass& sc) {
  return {{"euler", sc.euler},
          {"orientable", sc.orientable},
          {"genus", sc.genus},
          {"boundary_components", sc.boundary_components}};
}

inline nlohmann::json census_to_json(const TangencyCensus& tc) {
  nlohmann::json j;
  auto pts = [](const std::vector<std::pair<int, int>>& v) {
    auto a = nlohmann::json::array();
    for (auto& [gv, cv] : v) a.push_back({{"graph_vertex", gv}, {"complex_vertex", cv}});
    return a;
  };
  j["concave_points"] = pts(tc.concave_points);
  j["convex_points"] = pts(tc.convex_points);
  j["entry_arcs"] = tc.entry_arcs;
  j["exit_arcs"] = tc.exit_arcs;
  j["entry_circles"] = tc.entry_circles;
  j["exit_circles"] = tc.exit_circles;
  return j;
}

}  // namespace flatland
