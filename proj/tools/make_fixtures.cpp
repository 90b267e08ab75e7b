// regenerates the JSON fixture tree; run from the repository root:
//   build/make_fixtures [fixtures]
#include <filesystem>
#include <fstream>
#include <iostream>

#include <flatland/assembly.hpp>
#include <flatland/patterns.hpp>
#include <flatland/polyfam.hpp>

using namespace flatland;
namespace fs = std::filesystem;

static void put(const fs::path& p, nlohmann::json j) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p);
  f << j.dump(2) << "\n";
}

static nlohmann::json with_format(nlohmann::json j) {
  j["format"] = 1;
  return j;
}

int main(int argc, char** argv) {
  fs::path root = argc > 1 ? argv[1] : "fixtures";

  // graphs
  put(root / "graphs/theta.json", with_format(graph_to_json(theta_graph())));
  put(root / "graphs/dumbbell.json",
      with_format(graph_to_json(dumbbell_graph())));
  put(root / "graphs/capped_edge.json",
      with_format(graph_to_json(capped_edge_graph())));
  put(root / "graphs/gm.json", with_format(graph_to_json(gm_graph())));

  // colorings
  put(root / "colorings/theta_first.json",
      coloring_to_json(enumerate_tricolorings(theta_graph())[0]));
  put(root / "colorings/capped_edge.json",
      coloring_to_json(enumerate_tricolorings(capped_edge_graph())[0]));
  {
    // the coloring of the loop-plus-capped-radius graph whose surface is the
    // Mobius band (single boundary component, non-orientable)
    auto g = gm_graph();
    bool found = false;
    for (auto& c : enumerate_tricolorings(g)) {
      auto sc = classify(assemble(g, c));
      if (!sc.orientable && sc.boundary_components == 1) {
        put(root / "colorings/gm_mobius.json", coloring_to_json(c));
        found = true;
        break;
      }
    }
    if (!found) {
      std::cerr << "no mobius coloring found\n";
      return 1;
    }
  }
  {
    // same color on every half-edge: fails validation at both vertices
    Tricoloring bad;
    bad.color.assign(6, Color::A);
    put(root / "colorings/theta_invalid.json", coloring_to_json(bad));
  }

  // polynomial loops
  put(root / "polyloops/quartic_generator.json",
      polyloop_to_json(quartic_generator_loop()));
  put(root / "polyloops/degree6.json",
      polyloop_to_json(
          multiply_constant_poly(quartic_generator_loop(), {1, 0, 1})));
  put(root / "polyloops/constant_rootless.json",
      polyloop_to_json(constant_loop({1, 0, 1})));
  put(root / "polyloops/constant_two_roots.json",
      polyloop_to_json(constant_loop({-1, 0, 1})));
  {
    // (u - 2)(u^3 + cos(theta) u): hits a triple root where cos vanishes
    PolyLoop l;
    l.degree = 4;
    l.coeffs.resize(4);
    l.coeffs[1].cos = {0, -2};
    l.coeffs[2].cos = {0, 1};
    l.coeffs[3].cos = {-2};
    put(root / "polyloops/triple_root.json", polyloop_to_json(l));
  }

  // curve patterns
  put(root / "patterns/generator.json", pattern_to_json(generator_pattern()));
  put(root / "patterns/mirror.json",
      pattern_to_json(generator_pattern(true)));
  {
    CurvePattern p;
    p.loops.push_back(circle_curve());
    put(root / "patterns/circle.json", pattern_to_json(p));
  }
  {
    CurvePattern p;
    p.loops.push_back(figure_eight_curve());
    put(root / "patterns/figure_eight.json", pattern_to_json(p));
  }
  {
    CurvePattern p;
    p.loops.push_back(limacon_curve());
    put(root / "patterns/limacon.json", pattern_to_json(p));
  }
  {
    CurvePattern p;
    p.loops.push_back(genus1_boundary_curve());
    put(root / "patterns/genus1_boundary.json", pattern_to_json(p));
  }
  {
    CurvePattern p;
    p.annulus = true;
    p.loops.push_back(circle_curve(3.0, 0, 2));
    p.loops.push_back(circle_curve(3.0, 0, 1));
    put(root / "patterns/annulus_two_circles.json", pattern_to_json(p));
  }

  // annulus words
  put(root / "words/canonical_k.json", word_to_json(canonical_word()));
  put(root / "words/canonical_mirror.json",
      word_to_json(canonical_word(false)));
  put(root / "words/stacked_twice.json", word_to_json(canonical_multiple(2)));
  put(root / "words/k_times_mirror.json",
      word_to_json(concat(canonical_word(), canonical_word(false))));
  {
    using Ev = AnnulusWord::Event;
    using Op = AnnulusWord::Op;
    AnnulusWord w;  // two nested circles: a lens in the annulus
    w.events = {Ev{Op::birth, 0}, Ev{Op::birth, 1}, Ev{Op::death, 1},
                Ev{Op::death, 0}};
    put(root / "words/nested_circles.json", word_to_json(w));
    AnnulusWord x;  // two winding strands exchanging twice
    x.start_strands = 2;
    x.events = {Ev{Op::crossing, 0}, Ev{Op::crossing, 0}};
    put(root / "words/winding_crossings.json", word_to_json(x));
    AnnulusWord lens;  // single concave block carrying a removable lens
    lens.events = {Ev{Op::birth, 0}, Ev{Op::birth, 1}, Ev{Op::death, 0},
                   Ev{Op::birth, 2}, Ev{Op::death, 2}, Ev{Op::death, 0}};
    put(root / "words/block_with_lens.json", word_to_json(lens));
  }
  put(root / "words/quartic_delta.json",
      word_to_json(encode(delta_curves(quartic_generator_loop()))));

  // a deliberately malformed causality map, for the input-error path
  {
    nlohmann::json j;
    j["format"] = 1;
    j["arcs"] = "not-an-array";
    put(root / "causality/corrupt.json", j);
  }

  std::cout << "fixtures written to " << root << "\n";
  return 0;
}
