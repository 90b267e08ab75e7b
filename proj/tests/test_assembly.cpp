#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <flatland/assembly.hpp>

#include <map>
#include <set>
#include <tuple>

using namespace flatland;

static SurfaceClass classify_of(const TrivalentGraph& g, const Tricoloring& c) {
  return classify(assemble(g, c));
}

TEST_CASE("capped edge assembles to a disk with two convex caps") {
  auto g = capped_edge_graph();
  auto c = enumerate_tricolorings(g)[0];
  auto cx = assemble(g, c);
  auto sc = classify(cx);
  CHECK(sc.euler == 1);
  CHECK(sc.orientable);
  CHECK(sc.genus == 0);
  CHECK(sc.boundary_components == 1);
  auto tc = tangency_census(cx);
  CHECK(tc.concave_points.size() == 0);
  CHECK(tc.convex_points.size() == 2);
  CHECK(tc.entry_arcs == 1);
  CHECK(tc.exit_arcs == 1);
}

TEST_CASE("theta surface: chi -1, two concave points") {
  auto g = theta_graph();
  for (auto& c : enumerate_tricolorings(g)) {
    auto cx = assemble(g, c);
    auto sc = classify(cx);
    CHECK(sc.euler == -1);
    auto tc = tangency_census(cx);
    CHECK(tc.concave_points.size() == 2);
    CHECK(tc.convex_points.size() == 0);
  }
}

TEST_CASE("two-vertex classification census") {
  // The strips for colors A and B attach to the vertex fiber from one side,
  // the C strip from the other, so an edge picks up a half-twist exactly when
  // its two end colors sit on the same side ({A,B} meets {A,B}, or C meets C).
  // Over the 72 colorings this yields four classes, not three: besides the
  // punctured torus, punctured Klein bottle and disk with two holes, the
  // Mobius band with an extra hole (non-orientable, genus 1, two boundary
  // circles) appears as well. Verified against an independent ribbon-graph
  // boundary trace and a hand trace of the theta coloring ABC/ACB.
  std::map<std::tuple<bool, int, int>, int> theta_count, dumbbell_count;
  for (auto& c : enumerate_tricolorings(theta_graph())) {
    auto sc = classify_of(theta_graph(), c);
    CHECK(sc.euler == -1);
    theta_count[{sc.orientable, sc.genus, sc.boundary_components}]++;
  }
  for (auto& c : enumerate_tricolorings(dumbbell_graph())) {
    auto sc = classify_of(dumbbell_graph(), c);
    CHECK(sc.euler == -1);
    dumbbell_count[{sc.orientable, sc.genus, sc.boundary_components}]++;
  }
  std::map<std::tuple<bool, int, int>, int> theta_expected = {
      {{true, 1, 1}, 6},    // punctured torus
      {{false, 2, 1}, 12},  // punctured Klein bottle
      {{true, 0, 3}, 6},    // disk with two holes
      {{false, 1, 2}, 12},  // Mobius band with an extra hole
  };
  std::map<std::tuple<bool, int, int>, int> dumbbell_expected = {
      {{false, 2, 1}, 4},
      {{true, 0, 3}, 16},
      {{false, 1, 2}, 16},
  };
  CHECK(theta_count == theta_expected);
  CHECK(dumbbell_count == dumbbell_expected);
}

TEST_CASE("loop-plus-capped-radius graph yields the Mobius band") {
  auto g = gm_graph();
  int mobius = 0, annulus = 0;
  for (auto& c : enumerate_tricolorings(g)) {
    auto cx = assemble(g, c);
    auto sc = classify(cx);
    CHECK(sc.euler == 0);
    CHECK(sc.boundary_components >= 1);
    auto tc = tangency_census(cx);
    CHECK(tc.concave_points.size() == 1);
    CHECK(tc.convex_points.size() == 1);
    if (!sc.orientable && sc.genus == 1 && sc.boundary_components == 1)
      mobius++;
    if (sc.orientable && sc.genus == 0 && sc.boundary_components == 2)
      annulus++;
  }
  CHECK(mobius > 0);
  CHECK(mobius + annulus == 6);
}

TEST_CASE("euler of surface equals V - E of graph, small sweep") {
  for (int n : {2, 4}) {
    for (auto& g : enumerate_trivalent_graphs(n)) {
      for (auto& c : enumerate_tricolorings(g)) {
        auto sc = classify_of(g, c);
        CHECK(sc.euler == g.euler());
        if (sc.orientable)
          CHECK(sc.euler == 2 - 2 * sc.genus - sc.boundary_components);
        else
          CHECK(sc.euler == 2 - sc.genus - sc.boundary_components);
      }
    }
  }
}

TEST_CASE("concave minus convex equals -2 euler") {
  std::vector<ColoredGraph> inputs;
  for (auto g : {theta_graph(), dumbbell_graph(), gm_graph(),
                 capped_edge_graph()})
    for (auto& c : enumerate_tricolorings(g)) inputs.push_back({g, c});
  ColoredGraph theta{theta_graph(), enumerate_tricolorings(theta_graph())[0]};
  inputs.push_back(boundary_connect_sum(theta, theta));
  for (auto& in : inputs) {
    auto cx = assemble(in.graph, in.coloring);
    auto sc = classify(cx);
    auto tc = tangency_census(cx);
    CHECK((int)tc.concave_points.size() - (int)tc.convex_points.size() ==
          -2 * sc.euler);
  }
}

TEST_CASE("connected sum of two thetas has six concave points") {
  ColoredGraph theta{theta_graph(), enumerate_tricolorings(theta_graph())[0]};
  auto tt = boundary_connect_sum(theta, theta);
  auto cx = assemble(tt.graph, tt.coloring);
  auto tc = tangency_census(cx);
  CHECK(tc.concave_points.size() == 6);
  CHECK(classify(cx).euler == -3);
}

TEST_CASE("vertexless circle classifies as annulus") {
  TrivalentGraph g;
  g.circles = 1;
  Tricoloring c;
  auto cx = assemble(g, c);
  auto sc = classify(cx);
  CHECK(sc.euler == 0);
  CHECK(sc.orientable);
  CHECK(sc.genus == 0);
  CHECK(sc.boundary_components == 2);
  auto tc = tangency_census(cx);
  CHECK(tc.concave_points.empty());
  CHECK(tc.convex_points.empty());
  CHECK(tc.entry_circles == 1);
  CHECK(tc.exit_circles == 1);
}

TEST_CASE("complex invariants: edge-face incidence and boundary cycles") {
  for (auto g : {theta_graph(), dumbbell_graph(), gm_graph()}) {
    for (auto& c : enumerate_tricolorings(g)) {
      auto cx = assemble(g, c);
      // every edge borders one or two faces; boundary edges form cycles
      CHECK_NOTHROW(boundary_cycles(cx));
      // all tangency vertices lie on the boundary
      auto cycles = boundary_cycles(cx);
      std::set<int> bverts;
      for (auto& cyc : cycles)
        for (int e : cyc) {
          bverts.insert(cx.edges[e].a);
          bverts.insert(cx.edges[e].b);
        }
      for (int v : cx.concave_vertices) CHECK(bverts.count(v));
      for (int v : cx.convex_vertices) CHECK(bverts.count(v));
    }
  }
}
