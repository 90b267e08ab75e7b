#pragma once

// Half-edge graphs with vertices of valency 1 or 3, tricolorings of the
// half-edges, small-graph enumeration up to isomorphism, and the
// boundary-connected-sum construction on colored graphs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace flatland {

enum class Color : uint8_t { A, B, C, Cap };

inline const char* color_name(Color c) {
  switch (c) {
    case Color::A: return "A";
    case Color::B: return "B";
    case Color::C: return "C";
    default: return "Cap";
  }
}

inline std::optional<Color> color_from_name(const std::string& s) {
  if (s == "A") return Color::A;
  if (s == "B") return Color::B;
  if (s == "C") return Color::C;
  if (s == "Cap") return Color::Cap;
  return std::nullopt;
}

// Half-edges are dense integer ids 0..half_edges-1. `pairing` is a
// fixed-point-free involution (each orbit is one edge). `stars` partitions the
// half-edges into vertex stars of size 1 or 3. `circles` counts vertexless
// circle components (they carry no half-edges).
struct TrivalentGraph {
  int half_edges = 0;
  std::vector<int> pairing;
  std::vector<std::vector<int>> stars;
  int circles = 0;

  int vertex_count() const { return (int)stars.size(); }
  int edge_count() const { return half_edges / 2; }
  int euler() const { return vertex_count() - edge_count(); }

  int vertex_of(int h) const {
    for (int v = 0; v < (int)stars.size(); ++v)
      for (int x : stars[v])
        if (x == h) return v;
    return -1;
  }

  std::vector<int> vertex_lookup() const {
    std::vector<int> at(half_edges, -1);
    for (int v = 0; v < (int)stars.size(); ++v)
      for (int x : stars[v]) {
        if (x >= 0 && x < half_edges) at[x] = v;
      }
    return at;
  }

  int trivalent_count() const {
    int n = 0;
    for (auto& s : stars) n += (s.size() == 3);
    return n;
  }
  int univalent_count() const {
    int n = 0;
    for (auto& s : stars) n += (s.size() == 1);
    return n;
  }

  // Edges as (h_min, h_max) pairs in increasing h_min order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int h = 0; h < half_edges; ++h)
      if (pairing[h] > h) out.push_back({h, pairing[h]});
    return out;
  }

  bool vertexed_part_connected() const {
    if (stars.empty()) return true;
    auto at = vertex_lookup();
    std::vector<char> seen(stars.size(), 0);
    std::vector<int> todo{0};
    seen[0] = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int h : stars[v]) {
        int w = at[pairing[h]];
        if (w >= 0 && !seen[w]) {
          seen[w] = 1;
          todo.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }
};

struct Tricoloring {
  std::vector<Color> color;  // indexed by half-edge id
};

// Structural validation; returns one message per violated invariant.
inline std::vector<std::string> validate_graph(const TrivalentGraph& g) {
  std::vector<std::string> bad;
  if ((int)g.pairing.size() != g.half_edges)
    bad.push_back("pairing size differs from half-edge count");
  std::vector<int> owner(g.half_edges, -1);
  for (int v = 0; v < (int)g.stars.size(); ++v) {
    auto& s = g.stars[v];
    if (s.size() != 1 && s.size() != 3)
      bad.push_back("vertex " + std::to_string(v) + " has valency " +
                    std::to_string(s.size()));
    for (int h : s) {
      if (h < 0 || h >= g.half_edges) {
        bad.push_back("star contains out-of-range half-edge");
        continue;
      }
      if (owner[h] != -1)
        bad.push_back("half-edge " + std::to_string(h) + " in two stars");
      owner[h] = v;
    }
  }
  for (int h = 0; h < g.half_edges; ++h)
    if (owner[h] == -1)
      bad.push_back("half-edge " + std::to_string(h) + " in no star");
  for (int h = 0; h < (int)g.pairing.size() && h < g.half_edges; ++h) {
    int p = g.pairing[h];
    if (p < 0 || p >= g.half_edges) {
      bad.push_back("pairing out of range at " + std::to_string(h));
      continue;
    }
    if (p == h) bad.push_back("pairing fixes half-edge " + std::to_string(h));
    if (g.pairing[p] != h)
      bad.push_back("pairing not an involution at " + std::to_string(h));
  }
  if (g.circles < 0) bad.push_back("negative circle count");
  if (bad.empty() && !g.vertexed_part_connected())
    bad.push_back("vertexed part not connected");
  return bad;
}

inline std::vector<std::string> validate(const TrivalentGraph& g,
                                         const Tricoloring& c) {
  auto bad = validate_graph(g);
  if ((int)c.color.size() != g.half_edges) {
    bad.push_back("coloring size differs from half-edge count");
    return bad;
  }
  for (int v = 0; v < (int)g.stars.size(); ++v) {
    auto& s = g.stars[v];
    if (s.size() == 1) {
      if (c.color[s[0]] != Color::Cap)
        bad.push_back("univalent vertex " + std::to_string(v) + " not Cap");
    } else if (s.size() == 3) {
      std::set<Color> cs;
      for (int h : s) {
        if (c.color[h] == Color::Cap)
          bad.push_back("Cap color at trivalent vertex " + std::to_string(v));
        cs.insert(c.color[h]);
      }
      if (cs.size() != 3)
        bad.push_back("repeated color at vertex " + std::to_string(v));
    }
  }
  return bad;
}

// All valid colorings, lexicographic in the color word over half-edge ids.
// Each trivalent vertex independently takes one of the 6 bijections of its
// (sorted) star onto {A,B,C}, so the count is 6^(trivalent vertices).
inline std::vector<Tricoloring> enumerate_tricolorings(
    const TrivalentGraph& g) {
  static const std::array<std::array<Color, 3>, 6> perms = {{
      {Color::A, Color::B, Color::C},
      {Color::A, Color::C, Color::B},
      {Color::B, Color::A, Color::C},
      {Color::B, Color::C, Color::A},
      {Color::C, Color::A, Color::B},
      {Color::C, Color::B, Color::A},
  }};
  // order vertices by their least half-edge so per-vertex lexicographic
  // choices produce a globally lexicographic color word
  std::vector<int> tri;
  for (int v = 0; v < (int)g.stars.size(); ++v)
    if (g.stars[v].size() == 3) tri.push_back(v);
  std::sort(tri.begin(), tri.end(), [&](int a, int b) {
    return *std::min_element(g.stars[a].begin(), g.stars[a].end()) <
           *std::min_element(g.stars[b].begin(), g.stars[b].end());
  });

  Tricoloring base;
  base.color.assign(g.half_edges, Color::Cap);
  std::vector<Tricoloring> out;
  std::vector<int> choice(tri.size(), 0);
  while (true) {
    Tricoloring c = base;
    for (size_t k = 0; k < tri.size(); ++k) {
      std::vector<int> s = g.stars[tri[k]];
      std::sort(s.begin(), s.end());
      for (int j = 0; j < 3; ++j) c.color[s[j]] = perms[choice[k]][j];
    }
    out.push_back(std::move(c));
    int k = (int)tri.size() - 1;
    while (k >= 0 && choice[k] == 5) choice[k--] = 0;
    if (k < 0) break;
    ++choice[k];
  }
  if (tri.empty() && out.empty()) out.push_back(base);
  return out;
}

// ---- isomorphism ----------------------------------------------------------

// Adjacency encoding: loops[i], then upper triangle of the edge-multiplicity
// matrix. Canonical form = minimum over vertex relabelings that preserve
// valency. Feasible at desk scale (<= 8 vertices).
namespace detail {

struct Adjacency {
  int n = 0;
  std::vector<int> loops;               // per vertex
  std::vector<std::vector<int>> mult;   // symmetric multiplicities
  std::vector<int> valency;             // 1 or 3
};

inline Adjacency adjacency_of(const TrivalentGraph& g) {
  Adjacency a;
  a.n = g.vertex_count();
  a.loops.assign(a.n, 0);
  a.mult.assign(a.n, std::vector<int>(a.n, 0));
  a.valency.assign(a.n, 0);
  for (int v = 0; v < a.n; ++v) a.valency[v] = (int)g.stars[v].size();
  auto at = g.vertex_lookup();
  for (auto [h1, h2] : g.edges()) {
    int u = at[h1], v = at[h2];
    if (u == v)
      a.loops[u]++;
    else {
      a.mult[u][v]++;
      a.mult[v][u]++;
    }
  }
  return a;
}

inline std::vector<int> encode_under(const Adjacency& a,
                                     const std::vector<int>& perm) {
  // perm[i] = original vertex placed at slot i
  std::vector<int> code;
  code.reserve(a.n + a.n * (a.n - 1) / 2 + a.n);
  for (int i = 0; i < a.n; ++i) code.push_back(a.valency[perm[i]]);
  for (int i = 0; i < a.n; ++i) code.push_back(a.loops[perm[i]]);
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) code.push_back(a.mult[perm[i]][perm[j]]);
  return code;
}

inline std::vector<int> canonical_code(const TrivalentGraph& g) {
  Adjacency a = adjacency_of(g);
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  // only valency-preserving relabelings can compete for the minimum since the
  // valency block leads the code
  std::sort(perm.begin(), perm.end(),
            [&](int x, int y) { return a.valency[x] < a.valency[y]; });
  std::vector<int> best;
  do {
    auto code = encode_under(a, perm);
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end(), [&](int x, int y) {
    if (a.valency[x] != a.valency[y]) return a.valency[x] < a.valency[y];
    return x < y;
  }));
  best.push_back(g.circles);
  return best;
}

}  // namespace detail

inline bool isomorphic(const TrivalentGraph& g1, const TrivalentGraph& g2) {
  if (g1.half_edges != g2.half_edges || g1.circles != g2.circles ||
      g1.vertex_count() != g2.vertex_count())
    return false;
  return detail::canonical_code(g1) == detail::canonical_code(g2);
}

// ---- enumeration ----------------------------------------------------------

// All connected multigraphs (loops and parallel edges allowed) with every
// vertex trivalent, up to isomorphism. Output ordered by canonical code.
inline std::vector<TrivalentGraph> enumerate_trivalent_graphs(int vertex_count,
                                                              int cap = 8) {
  if (vertex_count < 0 || vertex_count % 2 != 0)
    throw std::invalid_argument("vertex count must be even and nonnegative");
  if (vertex_count > cap)
    throw std::invalid_argument("vertex count exceeds cap " +
                                std::to_string(cap));
  if (vertex_count == 0) return {};
  int n = vertex_count;

  std::vector<int> loops(n, 0);
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  std::vector<int> deg(n, 0);
  std::vector<std::pair<detail::Adjacency, int>> found;  // adjacency, id
  std::map<std::vector<int>, detail::Adjacency> reps;

  // fill loops then upper-triangle entries row by row with degree pruning
  std::function<void(int, int)> rec = [&](int i, int j) {
    if (i == n) {
      for (int v = 0; v < n; ++v)
        if (deg[v] != 3) return;
      // connectivity over the multigraph
      std::vector<char> seen(n, 0);
      std::vector<int> todo{0};
      seen[0] = 1;
      while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        for (int w = 0; w < n; ++w)
          if (mult[v][w] > 0 && !seen[w]) {
            seen[w] = 1;
            todo.push_back(w);
          }
      }
      if (!std::all_of(seen.begin(), seen.end(), [](char c) { return c; }))
        return;
      detail::Adjacency a;
      a.n = n;
      a.loops = loops;
      a.mult = mult;
      a.valency.assign(n, 3);
      // canonical form for dedup
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<int> best;
      do {
        auto code = detail::encode_under(a, perm);
        if (best.empty() || code < best) best = std::move(code);
      } while (std::next_permutation(perm.begin(), perm.end()));
      reps.emplace(best, a);
      return;
    }
    if (j == n) {
      // close row i: decide its loop count from the remaining degree parity
      int rem = 3 - deg[i];
      if (rem < 0) return;
      if (rem % 2 == 0 && rem / 2 <= 1) {
        loops[i] = rem / 2;
        deg[i] += rem;
        rec(i + 1, i + 2);
        deg[i] -= rem;
        loops[i] = 0;
      }
      return;
    }
    for (int m = 0; m <= 3 - std::max(deg[i], deg[j]); ++m) {
      mult[i][j] = mult[j][i] = m;
      deg[i] += m;
      deg[j] += m;
      rec(i, j + 1);
      deg[i] -= m;
      deg[j] -= m;
      mult[i][j] = mult[j][i] = 0;
    }
  };
  rec(0, 1);

  std::vector<TrivalentGraph> out;
  for (auto& [code, a] : reps) {
    TrivalentGraph g;
    g.half_edges = 3 * n;
    g.pairing.assign(g.half_edges, -1);
    g.stars.resize(n);
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      g.stars[v] = {3 * v, 3 * v + 1, 3 * v + 2};
      next[v] = 3 * v;
    }
    auto take = [&](int v) { return next[v]++; };
    for (int v = 0; v < n; ++v)
      for (int l = 0; l < a.loops[v]; ++l) {
        int h1 = take(v), h2 = take(v);
        g.pairing[h1] = h2;
        g.pairing[h2] = h1;
      }
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        for (int m = 0; m < a.mult[u][v]; ++m) {
          int h1 = take(u), h2 = take(v);
          g.pairing[h1] = h2;
          g.pairing[h2] = h1;
        }
    out.push_back(std::move(g));
  }
  return out;
}

// ---- boundary connected sum -----------------------------------------------

struct ColoredGraph {
  TrivalentGraph graph;
  Tricoloring coloring;
};

// Attach a 1-handle with a neck between the midpoints of the first canonical
// edge of each input. Adds 2 trivalent vertices; chi drops by one relative to
// the sum. New half-edges get the lexicographically least valid colors.
inline ColoredGraph boundary_connect_sum(const ColoredGraph& a,
                                         const ColoredGraph& b) {
  if (!validate(a.graph, a.coloring).empty() ||
      !validate(b.graph, b.coloring).empty())
    throw std::invalid_argument("boundary_connect_sum: invalid input");
  ColoredGraph out;
  TrivalentGraph& g = out.graph;
  int na = a.graph.half_edges;
  g.half_edges = na + b.graph.half_edges + 6;
  g.circles = a.graph.circles + b.graph.circles;
  g.pairing.assign(g.half_edges, -1);
  for (int h = 0; h < na; ++h) g.pairing[h] = a.graph.pairing[h];
  for (int h = 0; h < b.graph.half_edges; ++h)
    g.pairing[na + h] = na + b.graph.pairing[h];
  g.stars = a.graph.stars;
  for (auto s : b.graph.stars) {
    for (int& h : s) h += na;
    g.stars.push_back(s);
  }
  out.coloring.color = a.coloring.color;
  out.coloring.color.insert(out.coloring.color.end(), b.coloring.color.begin(),
                            b.coloring.color.end());

  int base = na + b.graph.half_edges;
  // split edge (e0,e1) at a new vertex whose star is {s0,s1,neck}
  auto splice = [&](int e0, int e1, int s0, int s1, int neck) {
    g.pairing[e0] = s0;
    g.pairing[s0] = e0;
    g.pairing[e1] = s1;
    g.pairing[s1] = e1;
    g.stars.push_back({s0, s1, neck});
  };
  auto first_edge = [&](const TrivalentGraph& src, int off) {
    auto es = src.edges();
    return std::pair<int, int>{es.front().first + off,
                               es.front().second + off};
  };
  auto [a0, a1] = first_edge(a.graph, 0);
  auto [b0, b1] = first_edge(b.graph, na);
  splice(a0, a1, base + 0, base + 1, base + 2);
  splice(b0, b1, base + 3, base + 4, base + 5);
  g.pairing[base + 2] = base + 5;
  g.pairing[base + 5] = base + 2;
  // least valid colors in half-edge id order at each new vertex
  for (int k = 0; k < 6; ++k)
    out.coloring.color.push_back(k % 3 == 0   ? Color::A
                                 : k % 3 == 1 ? Color::B
                                              : Color::C);
  return out;
}

// ---- JSON -----------------------------------------------------------------

inline nlohmann::json graph_to_json(const TrivalentGraph& g) {
  nlohmann::json j;
  j["half_edges"] = g.half_edges;
  auto pairs = nlohmann::json::array();
  for (auto [h1, h2] : g.edges()) pairs.push_back({h1, h2});
  j["pairing"] = pairs;
  j["stars"] = g.stars;
  if (g.circles > 0) j["circles"] = g.circles;
  return j;
}

inline TrivalentGraph graph_from_json(const nlohmann::json& j) {
  TrivalentGraph g;
  g.half_edges = j.at("half_edges").get<int>();
  g.pairing.assign(g.half_edges, -1);
  for (auto& p : j.at("pairing")) {
    int h1 = p.at(0).get<int>(), h2 = p.at(1).get<int>();
    if (h1 < 0 || h1 >= g.half_edges || h2 < 0 || h2 >= g.half_edges)
      throw std::invalid_argument("pairing id out of range");
    g.pairing[h1] = h2;
    g.pairing[h2] = h1;
  }
  g.stars = j.at("stars").get<std::vector<std::vector<int>>>();
  g.circles = j.value("circles", 0);
  return g;
}

inline nlohmann::json coloring_to_json(const Tricoloring& c) {
  nlohmann::json j = nlohmann::json::object();
  for (int h = 0; h < (int)c.color.size(); ++h)
    j[std::to_string(h)] = color_name(c.color[h]);
  return j;
}

inline Tricoloring coloring_from_json(const nlohmann::json& j, int half_edges) {
  Tricoloring c;
  c.color.assign(half_edges, Color::Cap);
  for (auto& [k, v] : j.items()) {
    int h = std::stoi(k);
    if (h < 0 || h >= half_edges)
      throw std::invalid_argument("coloring id out of range");
    auto col = color_from_name(v.get<std::string>());
    if (!col) throw std::invalid_argument("unknown color " + v.get<std::string>());
    c.color[h] = *col;
  }
  return c;
}

inline nlohmann::json colored_graph_to_json(const ColoredGraph& cg) {
  auto j = graph_to_json(cg.graph);
  j["coloring"] = coloring_to_json(cg.coloring);
  return j;
}

inline ColoredGraph colored_graph_from_json(const nlohmann::json& j) {
  ColoredGraph cg;
  cg.graph = graph_from_json(j);
  if (j.contains("coloring"))
    cg.coloring = coloring_from_json(j.at("coloring"), cg.graph.half_edges);
  else
    cg.coloring.color.assign(cg.graph.half_edges, Color::Cap);
  return cg;
}

// ---- stock graphs ---------------------------------------------------------

inline TrivalentGraph theta_graph() {
  TrivalentGraph g;
  g.half_edges = 6;
  g.pairing = {3, 4, 5, 0, 1, 2};
  g.stars = {{0, 1, 2}, {3, 4, 5}};
  return g;
}

inline TrivalentGraph dumbbell_graph() {
  TrivalentGraph g;
  g.half_edges = 6;
  g.pairing = {1, 0, 5, 4, 3, 2};
  g.stars = {{0, 1, 2}, {3, 4, 5}};
  return g;
}

inline TrivalentGraph capped_edge_graph() {
  TrivalentGraph g;
  g.half_edges = 2;
  g.pairing = {1, 0};
  g.stars = {{0}, {1}};
  return g;
}

// loop at a trivalent vertex plus a capped radius
inline TrivalentGraph gm_graph() {
  TrivalentGraph g;
  g.half_edges = 4;
  g.pairing = {1, 0, 3, 2};
  g.stars = {{0, 1, 2}, {3}};
  return g;
}

}  // namespace flatland
