#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <flatland/causality.hpp>

#include <set>

using namespace flatland;

static ColoredGraph roundtrip(const ColoredGraph& in) {
  auto cm = extract_causality(assemble(in.graph, in.coloring));
  REQUIRE(validate(cm).empty());
  auto tg = reconstruct(cm);
  auto col = derive_tricoloring(cm, tg);
  return {tg.graph, col};
}

TEST_CASE("capped edge: one continuous piece, two fixed points") {
  auto g = capped_edge_graph();
  auto c = enumerate_tricolorings(g)[0];
  auto cm = extract_causality(assemble(g, c));
  CHECK(validate(cm).empty());
  int entry = 0, exit = 0;
  for (auto& a : cm.arcs) (a.entry ? entry : exit)++;
  CHECK(entry == 1);
  CHECK(exit == 1);
  CHECK(cm.pieces.size() == 1);
  CHECK(cm.fixed_points.size() == 2);
  CHECK(cm.relays.empty());
  CHECK(discontinuity_points(cm).empty());
  // the flow reverses the traced boundary direction on a disk
  CHECK(!cm.pieces[0].orientation_preserving);
}

TEST_CASE("theta surface: two discontinuity points, pieces per graph edge") {
  auto g = theta_graph();
  for (auto& c : enumerate_tricolorings(g)) {
    auto cm = extract_causality(assemble(g, c));
    CHECK(validate(cm).empty());
    CHECK(cm.pieces.size() == 3);  // one per graph edge
    CHECK(cm.relays.size() == 2);
    CHECK(cm.fixed_points.empty());
    // jumps counted two ways: piece endpoints vs relay fibers
    auto jumps = discontinuity_points(cm);
    CHECK(jumps.size() == 2);
    std::set<int> z1;
    for (auto& r : cm.relays) z1.insert(r.entry_point);
    CHECK(jumps == z1);
  }
}

TEST_CASE("loop-plus-capped-radius: one relay, one fixed point") {
  auto g = gm_graph();
  for (auto& c : enumerate_tricolorings(g)) {
    auto cm = extract_causality(assemble(g, c));
    CHECK(validate(cm).empty());
    CHECK(cm.relays.size() == 1);
    CHECK(cm.fixed_points.size() == 1);
    CHECK(cm.pieces.size() == 2);
  }
}

TEST_CASE("fixed points are exactly the convex tangencies") {
  for (auto g : {theta_graph(), gm_graph(), capped_edge_graph()}) {
    for (auto& c : enumerate_tricolorings(g)) {
      auto cx = assemble(g, c);
      auto cm = extract_causality(cx);
      std::set<int> fixed(cm.fixed_points.begin(), cm.fixed_points.end());
      std::set<int> convex(cx.convex_vertices.begin(),
                           cx.convex_vertices.end());
      CHECK(fixed == convex);
    }
  }
}

TEST_CASE("reconstruction labels strata by valency") {
  auto g = gm_graph();
  auto c = enumerate_tricolorings(g)[0];
  auto cm = extract_causality(assemble(g, c));
  auto tg = reconstruct(cm);
  REQUIRE(tg.vertex_pattern.size() == 2);
  std::multiset<std::string> pats(tg.vertex_pattern.begin(),
                                  tg.vertex_pattern.end());
  CHECK(pats == std::multiset<std::string>{"121", "2"});
  for (auto& e : tg.edge_pattern) CHECK(e == "11");
  CHECK(validate_graph(tg.graph).empty());
}

TEST_CASE("holography roundtrip on all small graphs") {
  std::vector<ColoredGraph> inputs;
  for (auto g : {theta_graph(), dumbbell_graph(), gm_graph(),
                 capped_edge_graph()})
    for (auto& c : enumerate_tricolorings(g)) inputs.push_back({g, c});
  ColoredGraph theta{theta_graph(), enumerate_tricolorings(theta_graph())[0]};
  inputs.push_back(boundary_connect_sum(theta, theta));
  for (auto& g4 : enumerate_trivalent_graphs(4)) {
    auto cs = enumerate_tricolorings(g4);
    inputs.push_back({g4, cs.front()});
    inputs.push_back({g4, cs.back()});
    inputs.push_back({g4, cs[cs.size() / 2]});
  }
  for (auto& in : inputs) {
    auto back = roundtrip(in);
    CHECK(colored_isomorphic(back, in));
  }
}

TEST_CASE("roundtrip of the double theta keeps six trivalent vertices") {
  ColoredGraph theta{theta_graph(), enumerate_tricolorings(theta_graph())[0]};
  auto tt = boundary_connect_sum(theta, theta);
  auto back = roundtrip(tt);
  CHECK(back.graph.trivalent_count() == 6);
  CHECK(colored_isomorphic(back, tt));
}

TEST_CASE("vertexless circle passes through as a circle component") {
  TrivalentGraph g;
  g.circles = 1;
  auto cm = extract_causality(assemble(g, {}));
  CHECK(cm.circles == 1);
  CHECK(cm.pieces.empty());
  auto tg = reconstruct(cm);
  CHECK(tg.graph.circles == 1);
  CHECK(tg.graph.half_edges == 0);
}

TEST_CASE("colored isomorphism basics") {
  auto g = theta_graph();
  auto cs = enumerate_tricolorings(g);
  ColoredGraph a{g, cs[0]};  // ABC / ABC

  // relabeled copy: swap the two vertices
  TrivalentGraph h;
  h.half_edges = 6;
  h.pairing = {3, 4, 5, 0, 1, 2};
  h.stars = {{3, 4, 5}, {0, 1, 2}};
  ColoredGraph b{h, cs[0]};
  CHECK(colored_isomorphic(a, b));

  ColoredGraph d{dumbbell_graph(), cs[0]};
  CHECK(!colored_isomorphic(a, d));

  // ABC/ABC vs ABC/ACB: edge color pairs {AA,BB,CC} vs {AA,BC,CB}
  ColoredGraph e{g, cs[1]};
  CHECK(!colored_isomorphic(a, e));
  CHECK(colored_isomorphic(e, e));
}

TEST_CASE("causality json round trip") {
  auto g = gm_graph();
  auto c = enumerate_tricolorings(g)[0];
  auto cm = extract_causality(assemble(g, c));
  auto j = causality_to_json(cm);
  CHECK(j["format"] == 1);
  auto back = causality_from_json(j);
  CHECK(causality_to_json(back) == j);
  auto tg1 = reconstruct(cm);
  auto tg2 = reconstruct(back);
  CHECK(colored_isomorphic({tg1.graph, derive_tricoloring(cm, tg1)},
                           {tg2.graph, derive_tricoloring(back, tg2)}));
}

TEST_CASE("tampered causality maps are rejected") {
  auto g = theta_graph();
  auto c = enumerate_tricolorings(g)[0];
  auto cm = extract_causality(assemble(g, c));
  auto broken = cm;
  broken.relays.pop_back();  // orphan a discontinuity
  bool rejected = !validate(broken).empty();
  if (!rejected) {
    try {
      reconstruct(broken);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
  }
  CHECK(rejected);
}
