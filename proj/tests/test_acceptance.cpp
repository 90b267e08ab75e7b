// acceptance suite: fourteen pinned criteria, one PASS/FAIL line each.
// exit code is the number of failed criteria.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <flatland/causality.hpp>
#include <flatland/patterns.hpp>
#include <flatland/polyfam.hpp>
#include <flatland/strata.hpp>

using namespace flatland;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FIXTURE_DIR;
constexpr uint32_t kSampleSeed = 20240817;
constexpr int kSampleSize = 10000;

nlohmann::json load(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("missing fixture " + p.string());
  return nlohmann::json::parse(f);
}

// shared corpus for criteria 3, 4, 6, 13: all colored graphs on at most six
// vertices, randomly sampled down with a fixed seed
struct Sweep {
  long long total_cases = 0;
  int sampled = 0;
  int euler_bad = 0;   // chi != V - E
  int morse_bad = 0;   // (concave - convex)/2 != -chi
  int holo_bad = 0;    // roundtrip not colored-isomorphic
  int empty_census_bad = 0;  // tangency-free surface not a disk or annulus
};

const Sweep& sweep() {
  static Sweep s = [] {
    Sweep r;
    std::vector<ColoredGraph> cases;
    for (int n = 2; n <= 6; n += 2)
      for (auto& g : enumerate_trivalent_graphs(n))
        for (auto& c : enumerate_tricolorings(g)) cases.push_back({g, c});
    r.total_cases = (long long)cases.size();
    std::mt19937 rng(kSampleSeed);
    std::shuffle(cases.begin(), cases.end(), rng);
    if ((int)cases.size() > kSampleSize) cases.resize(kSampleSize);
    r.sampled = (int)cases.size();
    for (auto& [g, c] : cases) {
      auto cx = assemble(g, c);
      auto sc = classify(cx);
      auto tc = tangency_census(cx);
      int concave = (int)tc.concave_points.size();
      int convex = (int)tc.convex_points.size();
      if (sc.euler != g.euler()) r.euler_bad++;
      if (concave - convex != -2 * sc.euler) r.morse_bad++;
      if (concave == 0 && convex == 0) {
        bool disk = sc.orientable && sc.genus == 0 &&
                    sc.boundary_components == 1 && sc.euler == 1;
        bool annulus = sc.orientable && sc.genus == 0 &&
                       sc.boundary_components == 2 && sc.euler == 0;
        if (!disk && !annulus) r.empty_census_bad++;
      }
      auto cm = extract_causality(cx);
      auto tg = reconstruct(cm);
      auto col = derive_tricoloring(cm, tg);
      if (!colored_isomorphic({g, c}, {tg.graph, col})) r.holo_bad++;
    }
    return r;
  }();
  return s;
}

std::vector<fs::path> fixture_files(const char* sub) {
  std::vector<fs::path> out;
  for (auto& e : fs::directory_iterator(kFixtures / sub))
    out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// ---- criteria ---------------------------------------------------------------

bool crit_tricoloring_count(std::string& d) {
  size_t a = enumerate_tricolorings(theta_graph()).size();
  size_t b = enumerate_tricolorings(dumbbell_graph()).size();
  d = "theta " + std::to_string(a) + ", dumbbell " + std::to_string(b) +
      ", expected 36 each";
  return a == 36 && b == 36;
}

bool crit_two_vertex_classes(std::string& d) {
  auto t0 = std::chrono::steady_clock::now();
  std::set<std::tuple<bool, int, int>> classes;
  bool side_ok = true;
  for (auto g : {theta_graph(), dumbbell_graph()})
    for (auto& c : enumerate_tricolorings(g)) {
      auto cx = assemble(g, c);
      auto sc = classify(cx);
      auto tc = tangency_census(cx);
      classes.insert({sc.orientable, sc.genus, sc.boundary_components});
      if (sc.euler != -1) side_ok = false;
      if (tc.concave_points.size() != 2 || !tc.convex_points.empty())
        side_ok = false;
    }
  std::set<std::tuple<bool, int, int>> expected = {
      {true, 1, 1}, {false, 2, 1}, {true, 0, 3}};
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  std::ostringstream o;
  o << "expected exactly 3 classes, found " << classes.size() << " in " << ms
    << " ms";
  d = o.str();
  return classes == expected && side_ok && ms < 1000;
}

bool crit_euler_identity(std::string& d) {
  auto& s = sweep();
  d = std::to_string(s.sampled) + " of " + std::to_string(s.total_cases) +
      " cases sampled (seed " + std::to_string(kSampleSeed) + "), " +
      std::to_string(s.euler_bad) + " violations of chi = V - E";
  return s.euler_bad == 0 && s.sampled == kSampleSize;
}

bool crit_morse_identity(std::string& d) {
  auto& s = sweep();
  d = std::to_string(s.morse_bad) +
      " violations of (concave - convex)/2 = -chi over the same sample";
  return s.morse_bad == 0;
}

bool crit_mobius(std::string& d) {
  auto g = gm_graph();
  auto c = coloring_from_json(load(kFixtures / "colorings/gm_mobius.json"),
                              g.half_edges);
  auto cx = assemble(g, c);
  auto sc = classify(cx);
  auto tc = tangency_census(cx);
  std::ostringstream o;
  o << "orientable=" << sc.orientable << " chi=" << sc.euler
    << " boundaries=" << sc.boundary_components << " census=("
    << tc.concave_points.size() << "," << tc.convex_points.size() << ")";
  d = o.str();
  return !sc.orientable && sc.euler == 0 && sc.boundary_components == 1 &&
         tc.concave_points.size() == 1 && tc.convex_points.size() == 1;
}

bool crit_holography(std::string& d) {
  auto& s = sweep();
  d = std::to_string(s.holo_bad) +
      " roundtrip failures over the same sample";
  return s.holo_bad == 0;
}

bool crit_whitney(std::string& d) {
  int checked = 0, bad = 0;
  auto check_curve = [&](const ImmersedCurve& c) {
    CurvePattern p;
    p.loops.push_back(c);
    if (!validate(p).empty()) return false;
    auto r = whitney_report(c, vertical_tangencies(p));
    checked++;
    if (!r.whitney_ok) bad++;
    return r.euler_ok;
  };
  bool euler13 = check_curve(circle_curve());
  check_curve(figure_eight_curve());
  euler13 = check_curve(genus1_boundary_curve()) && euler13;
  for (uint32_t seed = 1; seed <= 20; ++seed) {
    CurvePattern p;
    p.loops.push_back(random_loop(seed));
    if (!validate(p).empty()) continue;
    auto si = self_intersections(p.loops[0]);
    checked++;
    if (gauss_degree(p.loops[0]) != si.mu + si.n_plus - si.n_minus) bad++;
  }
  d = std::to_string(checked) + " curves checked, " + std::to_string(bad) +
      " Whitney violations; region-bounding identity " +
      (euler13 ? "holds" : "fails");
  return bad == 0 && euler13 && checked >= 21;
}

bool crit_quartic_generator(std::string& d) {
  auto t0 = std::chrono::steady_clock::now();
  auto gen = quartic_generator_loop();
  auto events = track_loop(gen);
  int a = j_event_census(events);
  int b = j_strata_crossings(events, 4);
  int c = j_from_pattern(delta_curves(gen));
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  std::ostringstream o;
  o << "J = " << a << "/" << b << "/" << c
    << " by census/crossings/curves in " << ms << " ms";
  d = o.str();
  return a == 1 && b == 1 && c == 1 && ms < 1000;
}

bool crit_boundary_operator(std::string& d) {
  auto chain = [](const std::vector<std::pair<RootPattern, int>>& b) {
    std::map<RootPattern, int> m;
    for (auto& [p, c] : b) m[p] += c;
    return m;
  };
  using M = std::map<RootPattern, int>;
  bool ok = chain(cell_boundary({1, 2, 1, 1, 1}, 6)) ==
                M{{{3, 1, 1, 1}, 1},
                  {{1, 3, 1, 1}, -1},
                  {{1, 2, 2, 1}, 1},
                  {{1, 2, 1, 2}, -1}} &&
            chain(cell_boundary({1, 1, 1, 2, 1}, 6)) ==
                M{{{1, 1, 3, 1}, 1},
                  {{1, 1, 1, 3}, -1},
                  {{2, 1, 2, 1}, 1},
                  {{1, 2, 2, 1}, -1}} &&
            chain(cell_boundary({1, 2, 1}, 6)) == M{{{3, 1}, 1},
                                                    {{1, 3}, -1},
                                                    {{2, 1, 2, 1}, -1},
                                                    {{1, 2, 1, 2}, 1}};
  // the three-cell chain bounds exactly the forbidden locus of degree 6
  M total;
  for (auto w : {RootPattern{1, 2, 1, 1, 1}, RootPattern{1, 1, 1, 2, 1},
                 RootPattern{1, 2, 1}})
    for (auto& [p, c] : cell_boundary(w, 6)) total[p] += c;
  for (auto it = total.begin(); it != total.end();)
    it = (it->second == 0) ? total.erase(it) : std::next(it);
  bool forb = total == M{{{3, 1, 1, 1}, 1}, {{1, 3, 1, 1}, -1},
                         {{1, 1, 3, 1}, 1}, {{1, 1, 1, 3}, -1},
                         {{3, 1}, 1},       {{1, 3}, -1}};
  // boundary of a boundary vanishes through degree 8
  int dd_bad = 0;
  std::function<void(int, int, RootPattern&, std::vector<RootPattern>&)> all =
      [&](int deg, int rem, RootPattern& cur, std::vector<RootPattern>& out) {
        if ((deg - rem) % 2 == deg % 2) out.push_back(cur);
        for (int k = 1; k <= rem; ++k) {
          cur.push_back(k);
          all(deg, rem - k, cur, out);
          cur.pop_back();
        }
      };
  for (int deg : {4, 6, 8}) {
    std::vector<RootPattern> pats;
    RootPattern cur;
    all(deg, deg, cur, pats);
    for (auto& w : pats) {
      M acc;
      for (auto& [v, c] : cell_boundary(w, deg))
        for (auto& [u, c2] : cell_boundary(v, deg)) acc[u] += c * c2;
      for (auto& [u, c] : acc)
        if (c != 0) dd_bad++;
    }
  }
  d = std::string("displayed identities ") + (ok ? "hold" : "fail") +
      ", forbidden chain " + (forb ? "holds" : "fails") + ", " +
      std::to_string(dd_bad) + " boundary-squared residues through degree 8";
  return ok && forb && dd_bad == 0;
}

bool crit_perturbation(std::string& d) {
  int fixtures = 0, revalidated = 0, bad = 0;
  for (auto& f : fixture_files("polyloops")) {
    auto loop = polyloop_from_json(load(f));
    int base;
    try {
      base = j_invariant(loop);
    } catch (const std::exception&) {
      continue;  // the forbidden-locus fixture has no invariant
    }
    fixtures++;
    for (uint32_t seed = 1; seed <= 100; ++seed) {
      int j;
      try {
        j = j_invariant(perturb_loop(loop, 1e-2, seed));
      } catch (const std::exception&) {
        continue;  // left the admissible region
      }
      revalidated++;
      if (j != base) bad++;
    }
  }
  d = std::to_string(fixtures) + " loop fixtures, " +
      std::to_string(revalidated) + " of " + std::to_string(fixtures * 100) +
      " perturbations re-validated, " + std::to_string(bad) + " changed J";
  return bad == 0 && fixtures >= 4 && revalidated > 0;
}

bool crit_j_bound(std::string& d) {
  int checked = 0, bad = 0;
  for (auto& f : fixture_files("polyloops")) {
    auto loop = polyloop_from_json(load(f));
    std::vector<LoopEvent> events;
    try {
      events = track_loop(loop);
    } catch (const std::exception&) {
      continue;
    }
    int concave = 0;
    for (auto& ev : events)
      if (ev.concave) concave++;
    checked++;
    if (std::abs(j_event_census(events)) > concave) bad++;
  }
  for (auto& f : fixture_files("patterns")) {
    auto pat = pattern_from_json(load(f));
    int concave = 0;
    for (auto& ev : vertical_tangencies(pat))
      if (ev.concave) concave++;
    checked++;
    if (std::abs(j_from_pattern(pat)) > concave) bad++;
  }
  d = std::to_string(checked) + " fixtures checked, " + std::to_string(bad) +
      " exceed the concave-event bound";
  return bad == 0 && checked >= 10;
}

bool crit_reduction(std::string& d) {
  int words = 0, bad = 0;
  for (auto& f : fixture_files("words")) {
    auto w = word_from_json(load(f));
    words++;
    auto r = reduce(w);  // conservation of J is asserted on every rewrite
    if (r.n != j_of_word(w)) bad++;
    auto expect = canonical_multiple(r.n);
    if (r.terminal.events != expect.events ||
        r.terminal.start_strands != expect.start_strands)
      bad++;
    // the trace replays to the same terminal form
    auto back = replay(w, r.trace);
    if (back.events != r.terminal.events) bad++;
  }
  d = std::to_string(words) + " fixture words reduced, " +
      std::to_string(bad) + " normal-form failures";
  return bad == 0 && words >= 8;
}

bool crit_empty_census(std::string& d) {
  auto& s = sweep();
  d = std::to_string(s.empty_census_bad) +
      " tangency-free surfaces other than disks and annuli in the sample";
  return s.empty_census_bad == 0;
}

bool crit_snake(std::string& d) {
  auto c = circle_curve();
  int n = (int)c.pts.size();
  auto idx = [&](double deg) {
    return (int)std::lround(deg / 360.0 * n - 0.5);
  };
  auto snaked = snake_modify(c, idx(20), idx(30), 0.5);
  CurvePattern before, after;
  before.loops.push_back(c);
  after.loops.push_back(snaked);
  if (!validate(after).empty()) {
    d = "snake output failed the genericity certificate";
    return false;
  }
  int j0 = j_from_pattern(before), j1 = j_from_pattern(after);
  auto r0 = whitney_report(c, vertical_tangencies(before));
  auto r1 = whitney_report(snaked, vertical_tangencies(after));
  int chi0 = (r0.convex_count - r0.concave_count) / 2;
  int chi1 = (r1.convex_count - r1.concave_count) / 2;
  std::ostringstream o;
  o << "J " << j0 << " -> " << j1 << ", trajectory-graph chi " << chi0
    << " -> " << chi1;
  d = o.str();
  return j1 == j0 + 1 && chi0 == chi1 &&
         gauss_degree(snaked) == gauss_degree(c);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
  };
  std::vector<Criterion> criteria = {
      {"36 tricolorings for each two-vertex graph", crit_tricoloring_count},
      {"two-vertex surfaces fall into the three pinned classes",
       crit_two_vertex_classes},
      {"chi = V - E across the sampled sweep", crit_euler_identity},
      {"(concave - convex)/2 = -chi across the sweep", crit_morse_identity},
      {"loop-plus-capped-radius fixture is the Mobius band", crit_mobius},
      {"causality roundtrip recovers the colored graph", crit_holography},
      {"Whitney formula on the curve suite", crit_whitney},
      {"quartic generator scores J = +1 three independent ways",
       crit_quartic_generator},
      {"boundary-operator identities in degree 6 and below 8",
       crit_boundary_operator},
      {"J survives 100 seeded coefficient perturbations", crit_perturbation},
      {"|J| bounded by the concave event count on all fixtures",
       crit_j_bound},
      {"every fixture word reduces to n copies of the basic block",
       crit_reduction},
      {"tangency-free surfaces are disks or annuli", crit_empty_census},
      {"snake modification adds exactly one to J", crit_snake},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) failures++;
    std::printf("[%2zu] %s  %s (%s)\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].name, detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
