// single-binary command line surface over the library: JSON on stdout,
// diagnostics on stderr, exit 0 on success, 1 on domain errors, 2 on bad input
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <flatland/causality.hpp>
#include <flatland/patterns.hpp>
#include <flatland/polyfam.hpp>
#include <flatland/strata.hpp>
#include <flatland/svg.hpp>

using namespace flatland;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path resolve_input(const std::string& name) {
  if (fs::exists(name)) return name;
  const char* env = std::getenv("FLATLAND_FIXTURES");
  fs::path root = env ? env : "fixtures";
  if (fs::exists(root / name)) return root / name;
  throw InputError("cannot find input file: " + name);
}

json load_json(const std::string& name) {
  auto path = resolve_input(name);
  std::ifstream f(path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << body;
}

TrivalentGraph load_graph(const std::string& name) {
  try {
    return graph_from_json(load_json(name));
  } catch (const json::exception& e) {
    throw InputError(name + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(name + ": " + e.what());
  }
}

Tricoloring load_coloring(const std::string& name, int half_edges) {
  try {
    return coloring_from_json(load_json(name), half_edges);
  } catch (const json::exception& e) {
    throw InputError(name + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(name + ": " + e.what());
  }
}

json build_record(const TrivalentGraph& g, const Tricoloring& c,
                  bool dump_surface) {
  auto cx = assemble(g, c);
  json r;
  r["class"] = class_to_json(classify(cx));
  r["census"] = census_to_json(tangency_census(cx));
  auto sc = strata_census(cx);
  r["strata"] = strata_census_to_json(sc);
  r["strata"]["complexity"] =
      complexity_report_to_json(complexity_report(classify(cx), sc));
  if (dump_surface) r["surface"] = surface_to_json(cx);
  return r;
}

int require_valid_coloring(const TrivalentGraph& g, const Tricoloring& c) {
  auto bad = validate(g, c);
  if (bad.empty()) return 0;
  for (auto& m : bad) std::cerr << "coloring: " << m << "\n";
  return 1;
}

json holography_record(const TrivalentGraph& g, const Tricoloring& c) {
  auto cm = extract_causality(assemble(g, c));
  auto bad = validate(cm);
  if (!bad.empty()) throw std::runtime_error("causality: " + bad.front());
  auto tg = reconstruct(cm);
  auto col = derive_tricoloring(cm, tg);
  json r;
  r["format"] = 1;
  r["causality"] = causality_to_json(cm);
  r["reconstructed"] = colored_graph_to_json({tg.graph, col});
  r["isomorphic"] = colored_isomorphic({g, c}, {tg.graph, col});
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"traversing-flow toolkit"};
  app.require_subcommand(1);
  bool as_json = true;
  app.add_flag("--json", as_json, "emit JSON (default, always on)");

  std::string render_file;
  int jobs = 1;
  uint32_t seed = 1;
  int max_vertices = 4;

  // build
  auto* build = app.add_subcommand("build", "assemble a surface from a graph");
  std::string b_graph, b_coloring;
  bool b_enum = false, b_dump = false;
  build->add_option("graph", b_graph)->required();
  build->add_option("coloring", b_coloring);
  build->add_flag("--enumerate", b_enum, "one record per tricoloring");
  build->add_flag("--dump-surface", b_dump, "include the full cell complex");
  build->add_option("--jobs", jobs);

  // holography
  auto* holo = app.add_subcommand(
      "holography", "extract the boundary causality map and reconstruct");
  std::string h_graph, h_coloring, h_causality;
  holo->add_option("graph", h_graph);
  holo->add_option("coloring", h_coloring);
  holo->add_option("--from-causality", h_causality,
                   "reconstruct from a causality-map file");

  // whitney
  auto* whit = app.add_subcommand("whitney",
                                  "turning numbers and tangencies of a "
                                  "curve pattern");
  std::string w_pattern;
  whit->add_option("pattern", w_pattern)->required();
  whit->add_option("--render", render_file);

  // polyloop
  auto* ploop =
      app.add_subcommand("polyloop", "track a loop of monic polynomials");
  std::string p_loop;
  ploop->add_option("loop", p_loop)->required();
  ploop->add_option("--render", render_file, "SVG of the zero-set curves");
  ploop->add_option("--jobs", jobs);
  ploop->add_option("--seed", seed, "seed for perturbation retries");

  // reduce-pattern
  auto* red = app.add_subcommand("reduce-pattern",
                                 "rewrite an annulus word to normal form");
  std::string r_word;
  red->add_option("word", r_word, "word file, or a pattern file to encode")
      ->required();
  red->add_option("--render", render_file, "SVG wiring diagram of the input");

  // enumerate-graphs
  auto* egr = app.add_subcommand("enumerate-graphs",
                                 "trivalent multigraphs up to isomorphism");
  egr->add_option("--max-vertices", max_vertices);
  egr->add_option("--jobs", jobs);

  // render
  auto* ren = app.add_subcommand("render", "emit an SVG figure for any input");
  std::string x_input, x_coloring;
  ren->add_option("input", x_input)->required();
  ren->add_option("coloring", x_coloring);
  ren->add_option("--render", render_file, "output file (default out.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (*build) {
      auto g = load_graph(b_graph);
      json out;
      out["format"] = 1;
      if (b_enum) {
        auto cols = enumerate_tricolorings(g);
        std::vector<json> recs(cols.size());
        auto worker = [&](size_t lo, size_t hi) {
          for (size_t i = lo; i < hi; ++i) {
            recs[i] = build_record(g, cols[i], b_dump);
            recs[i]["coloring"] = coloring_to_json(cols[i]);
          }
        };
        if (jobs <= 1) {
          worker(0, cols.size());
        } else {
          std::vector<std::thread> pool;
          for (int j = 0; j < jobs; ++j)
            pool.emplace_back(worker, cols.size() * j / jobs,
                              cols.size() * (j + 1) / jobs);
          for (auto& t : pool) t.join();
        }
        out["count"] = recs.size();
        out["records"] = recs;
      } else {
        if (b_coloring.empty())
          throw InputError("build: need a coloring file or --enumerate");
        auto c = load_coloring(b_coloring, g.half_edges);
        if (require_valid_coloring(g, c)) return 1;
        out.update(build_record(g, c, b_dump));
        out["graph"] = graph_to_json(g);
        out["coloring"] = coloring_to_json(c);
      }
      emit(out);
      return 0;
    }

    if (*holo) {
      if (!h_causality.empty()) {
        CausalityMap cm;
        try {
          cm = causality_from_json(load_json(h_causality));
        } catch (const json::exception& e) {
          throw InputError(h_causality + ": " + e.what());
        } catch (const std::invalid_argument& e) {
          throw InputError(h_causality + ": " + e.what());
        }
        auto bad = validate(cm);
        if (!bad.empty()) {
          for (auto& m : bad) std::cerr << "causality: " << m << "\n";
          return 1;
        }
        auto tg = reconstruct(cm);
        auto col = derive_tricoloring(cm, tg);
        // self-check: rebuilding from the derived pair reproduces the input
        auto rt = holography_record(tg.graph, col);
        json out;
        out["format"] = 1;
        out["causality"] = causality_to_json(cm);
        out["reconstructed"] = colored_graph_to_json({tg.graph, col});
        out["isomorphic"] = rt["isomorphic"];
        emit(out);
        return 0;
      }
      if (h_graph.empty())
        throw InputError("holography: need graph [coloring] or "
                         "--from-causality");
      TrivalentGraph g;
      Tricoloring c;
      if (h_coloring.empty()) {
        // a single colored-graph file, e.g. the output of build --dump-surface
        auto j = load_json(h_graph);
        try {
          if (j.contains("graph")) {  // a build --dump-surface record
            g = graph_from_json(j.at("graph"));
            c = coloring_from_json(j.at("coloring"), g.half_edges);
          } else {
            auto cg = colored_graph_from_json(j);
            g = cg.graph;
            c = cg.coloring;
          }
        } catch (const json::exception& e) {
          throw InputError(h_graph + ": " + e.what());
        } catch (const std::invalid_argument& e) {
          throw InputError(h_graph + ": " + e.what());
        }
      } else {
        g = load_graph(h_graph);
        c = load_coloring(h_coloring, g.half_edges);
      }
      if (require_valid_coloring(g, c)) return 1;
      emit(holography_record(g, c));
      return 0;
    }

    if (*whit) {
      CurvePattern pat;
      try {
        pat = pattern_from_json(load_json(w_pattern));
      } catch (const json::exception& e) {
        throw InputError(w_pattern + ": " + e.what());
      }
      auto bad = validate(pat);
      if (!bad.empty()) {
        for (auto& m : bad) std::cerr << "pattern: " << m << "\n";
        return 1;
      }
      auto evs = vertical_tangencies(pat);
      json out;
      out["format"] = 1;
      auto loops = json::array();
      for (size_t i = 0; i < pat.loops.size(); ++i) {
        CurvePattern one;
        one.annulus = pat.annulus;
        one.loops.push_back(pat.loops[i]);
        auto r = whitney_report(pat.loops[i], vertical_tangencies(one),
                                pat.annulus);
        loops.push_back({{"degree", r.degree},
                         {"mu", r.mu},
                         {"n_plus", r.n_plus},
                         {"n_minus", r.n_minus},
                         {"convex", r.convex_count},
                         {"concave", r.concave_count},
                         {"whitney_ok", r.whitney_ok},
                         {"euler_ok", r.euler_ok}});
      }
      out["loops"] = loops;
      out["events"] = events_to_json(evs);
      out["j"] = j_from_pattern(pat);
      if (!render_file.empty()) {
        write_file(render_file, pattern_svg(pat));
        out["rendered"] = render_file;
      }
      emit(out);
      return 0;
    }

    if (*ploop) {
      PolyLoop loop;
      try {
        loop = polyloop_from_json(load_json(p_loop));
      } catch (const json::exception& e) {
        throw InputError(p_loop + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        throw InputError(p_loop + ": " + e.what());
      }
      std::vector<LoopEvent> events;
      bool perturbed = false;
      PolyLoop used = loop;
      for (int attempt = 0;; ++attempt) {
        try {
          events = track_loop(used, 1024, jobs);
          break;
        } catch (const std::runtime_error& e) {
          // non-generic loops get a seeded nudge and one more try
          if (attempt >= 3) throw;
          std::cerr << "retrying with perturbation, seed "
                    << seed + attempt << ": " << e.what() << "\n";
          used = perturb_loop(loop, 1e-6, seed + attempt);
          perturbed = true;
        }
      }
      auto pat = delta_curves(used);
      json out;
      out["format"] = 1;
      out["degree"] = loop.degree;
      out["events"] = loop_events_to_json(events);
      out["j_event_census"] = j_event_census(events);
      out["j_strata_crossings"] = j_strata_crossings(events, loop.degree);
      out["j_delta_pattern"] = j_from_pattern(pat);
      if (perturbed) out["perturbation_seed"] = seed;
      int bound = 0;
      for (int k = 0; k < 256; ++k) {
        double t = (k + 0.5) * kTau / 256;
        auto p = used.at(t);
        auto roots = detail::all_roots(p);
        bound = std::max(
            bound, detail::real_root_count(p, detail::root_scale(roots)));
      }
      out["strand_bound"] = bound;
      bool agree = out["j_event_census"] == out["j_strata_crossings"] &&
                   out["j_event_census"] == out["j_delta_pattern"];
      out["agree"] = agree;
      if (agree) out["j"] = out["j_event_census"];
      if (!render_file.empty()) {
        write_file(render_file, pattern_svg(pat));
        out["rendered"] = render_file;
      }
      emit(out);
      return 0;
    }

    if (*red) {
      auto j = load_json(r_word);
      AnnulusWord w;
      try {
        if (j.contains("loops"))
          w = encode(pattern_from_json(j));
        else
          w = word_from_json(j);
      } catch (const json::exception& e) {
        throw InputError(r_word + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        throw InputError(r_word + ": " + e.what());
      }
      auto bad = validate_word(w);
      if (!bad.empty()) {
        for (auto& m : bad) std::cerr << "word: " << m << "\n";
        return 1;
      }
      auto r = reduce(w);
      json out;
      out["format"] = 1;
      out["word"] = word_to_json(w);
      out["n"] = r.n;
      out["trace"] = trace_to_json(r.trace);
      out["terminal"] = word_to_json(r.terminal);
      if (!render_file.empty()) {
        write_file(render_file, word_svg(w));
        out["rendered"] = render_file;
      }
      emit(out);
      return 0;
    }

    if (*egr) {
      json out;
      out["format"] = 1;
      auto counts = json::object();
      auto graphs = json::array();
      for (int n = 2; n <= max_vertices; n += 2) {
        auto gs = enumerate_trivalent_graphs(n);
        counts[std::to_string(n)] = gs.size();
        for (auto& g : gs) graphs.push_back(graph_to_json(g));
      }
      out["counts"] = counts;
      out["graphs"] = graphs;
      emit(out);
      return 0;
    }

    if (*ren) {
      auto j = load_json(x_input);
      if (render_file.empty()) render_file = "out.svg";
      json out;
      out["format"] = 1;
      out["written"] = render_file;
      if (j.contains("half_edges")) {
        auto g = graph_from_json(j);
        Tricoloring c;
        if (j.contains("coloring"))
          c = coloring_from_json(j.at("coloring"), g.half_edges);
        else if (!x_coloring.empty())
          c = load_coloring(x_coloring, g.half_edges);
        else
          throw InputError("render: graph input needs a coloring");
        if (require_valid_coloring(g, c)) return 1;
        write_file(render_file, surface_svg(g, c));
        out["kind"] = "surface";
      } else if (j.contains("degree") && j.contains("coeffs")) {
        auto loop = polyloop_from_json(j);
        write_file(render_file, pattern_svg(delta_curves(loop)));
        out["kind"] = "polyloop";
      } else if (j.contains("loops")) {
        auto pat = pattern_from_json(j);
        write_file(render_file, pattern_svg(pat));
        out["kind"] = "pattern";
      } else if (j.contains("events")) {
        write_file(render_file, word_svg(word_from_json(j)));
        out["kind"] = "word";
      } else {
        throw InputError("render: unrecognized input schema");
      }
      emit(out);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
