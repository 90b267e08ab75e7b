#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <flatland/patterns.hpp>
#include <flatland/polyfam.hpp>

using namespace flatland;

using Op = AnnulusWord::Op;
using Ev = AnnulusWord::Event;

static AnnulusWord make_word(int start, std::vector<Ev> ev) {
  AnnulusWord w;
  w.start_strands = start;
  w.events = std::move(ev);
  return w;
}

static int peak_strands(const AnnulusWord& w) {
  int c = w.start_strands, peak = c;
  for (auto& e : w.events) {
    c += detail::event_delta(e);
    peak = std::max(peak, c);
  }
  return peak;
}

TEST_CASE("canonical words") {
  auto k = canonical_word();
  CHECK(validate_word(k).empty());
  CHECK(k.events.size() == 4);
  CHECK(j_of_word(k) == 1);
  // one concave-plus birth framed by three convex caps
  auto counts = strand_counts(k);
  int concave = 0, convex = 0;
  for (size_t i = 0; i < k.events.size(); ++i) {
    auto cl = classify_event(k.events[i], counts[i]);
    REQUIRE(cl.tangency);
    if (cl.concave) {
      concave++;
      CHECK(cl.plus);
      CHECK(cl.birth);
    } else {
      convex++;
    }
  }
  CHECK(concave == 1);
  CHECK(convex == 3);

  auto m = canonical_word(false);
  CHECK(validate_word(m).empty());
  CHECK(j_of_word(m) == -1);

  CHECK(j_of_word(canonical_multiple(2)) == 2);  // the doubled diagrams
  CHECK(j_of_word(canonical_multiple(-3)) == -3);
  CHECK(j_of_word(AnnulusWord{}) == 0);
}

TEST_CASE("word validation") {
  CHECK(validate_word(make_word(2, {{Op::crossing, 0}})).empty());
  CHECK(!validate_word(make_word(0, {{Op::birth, 0}})).empty());  // no closure
  CHECK(!validate_word(make_word(2, {{Op::birth, 5}, {Op::death, 0}})).empty());
  CHECK(!validate_word(make_word(0, {{Op::death, 0}, {Op::birth, 0}})).empty());
  auto w = canonical_word();
  w.bound = 2;  // the word peaks at four strands
  CHECK(!validate_word(w).empty());
}

TEST_CASE("encoding stock patterns") {
  CHECK(encode(CurvePattern{}).events.empty());

  auto gen = encode(generator_pattern());
  CHECK(gen.start_strands == 0);
  CHECK(gen.events == canonical_word().events);
  CHECK(j_of_word(gen) == 1);
  CHECK(j_of_word(gen) == j_from_pattern(generator_pattern()));

  auto mir = encode(generator_pattern(true));
  CHECK(mir.events == canonical_word(false).events);
  CHECK(j_of_word(mir) == -1);

  // a symmetric eight has both caps of each side at one theta
  CurvePattern f8;
  f8.loops.push_back(figure_eight_curve());
  CHECK_THROWS_AS(encode(f8), std::domain_error);
}

TEST_CASE("encoding winding strands with crossings") {
  CurvePattern pat;
  pat.annulus = true;
  for (int which = 0; which < 2; ++which) {
    ImmersedCurve c;
    int n = 256;
    for (int k = 0; k < n; ++k) {
      double t = (k + 0.3) * kTau / n;
      c.pts.push_back({t, which ? 0.5 * std::cos(t) : 0.5 * std::sin(t)});
    }
    pat.loops.push_back(std::move(c));
  }
  REQUIRE(validate(pat).empty());
  auto w = encode(pat);
  CHECK(w.start_strands == 2);
  REQUIRE(w.events.size() == 2);
  CHECK(w.events[0] == Ev{Op::crossing, 0});
  CHECK(w.events[1] == Ev{Op::crossing, 0});
  CHECK(j_of_word(w) == 0);
  auto r = reduce(w);
  CHECK(r.n == 0);
  CHECK(r.terminal.events.empty());
}

TEST_CASE("encoding concentric circles and cancelling their polarities") {
  CurvePattern pat;
  pat.loops.push_back(circle_curve(0, 0, 2));
  pat.loops.push_back(circle_curve(0, 0, 1));
  auto w = encode(pat);
  REQUIRE(w.events.size() == 4);
  CHECK(w.events == std::vector<Ev>{{Op::birth, 0},
                                    {Op::birth, 1},
                                    {Op::death, 1},
                                    {Op::death, 0}});
  CHECK(j_of_word(w) == 0);
  auto r = reduce(w);
  CHECK(r.n == 0);
  CHECK(r.terminal.events.empty());
  // split the stretch between the opposite concave events, then cancel
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0].step == 3);
  CHECK(r.trace[1].step == 6);
  CHECK(r.trace[2].step == 7);
}

TEST_CASE("the quartic zero-set word reduces to one generator") {
  auto pat = delta_curves(quartic_generator_loop());
  auto w = encode(pat);
  CHECK(w.start_strands == 2);  // no fiber is empty before surgery
  REQUIRE(w.events.size() == 2);
  CHECK(w.events[0].op == Op::birth);
  CHECK(w.events[1].op == Op::death);
  CHECK(j_of_word(w) == 1);
  CHECK(j_of_word(w) == j_from_pattern(pat));
  auto r = reduce(w);
  CHECK(r.n == 1);
  CHECK(r.terminal.events == canonical_word().events);
  CHECK(r.n == j_invariant(quartic_generator_loop()));
}

TEST_CASE("zero-set words of derived loops") {
  auto rev = reduce(encode(delta_curves(theta_reverse(quartic_generator_loop()))));
  CHECK(rev.n == -1);
  CHECK(rev.terminal.events == canonical_word(false).events);

  auto twice = reduce(encode(delta_curves(theta_multiply(quartic_generator_loop(), 2))));
  CHECK(twice.n == 2);
  CHECK(twice.terminal.events == canonical_multiple(2).events);

  auto six = reduce(encode(delta_curves(
      multiply_constant_poly(quartic_generator_loop(), {1, 0, 1}))));
  CHECK(six.n == 1);
}

TEST_CASE("stacking a generator against its mirror cancels") {
  auto w = concat(encode(generator_pattern()), encode(generator_pattern(true)));
  CHECK(j_of_word(w) == 0);
  auto r = reduce(w);
  CHECK(r.n == 0);
  CHECK(r.terminal.events.empty());
  CHECK(reduce(canonical_multiple(2)).n == 2);
  CHECK_THROWS_AS(concat(w, make_word(2, {})), std::invalid_argument);
}

TEST_CASE("step 1 removes a crossing and nothing else") {
  auto w = make_word(2, {{Op::crossing, 0}});
  auto out = rewrite(w, 1, 0);
  CHECK(out.events.empty());
  CHECK(out.start_strands == 2);
  CHECK(j_of_word(out) == j_of_word(w));
  CHECK_THROWS_AS(rewrite(canonical_word(), 1, 0), std::invalid_argument);
}

TEST_CASE("steps 2 and 3 cap a fiber down to nothing with convex events") {
  auto out = rewrite(make_word(2, {}), 2, 0);
  CHECK(out.start_strands == 0);
  CHECK(out.events == std::vector<Ev>{{Op::birth, 0}, {Op::death, 0}});
  auto counts = strand_counts(out);
  for (size_t i = 0; i < out.events.size(); ++i)
    CHECK(!classify_event(out.events[i], counts[i]).concave);
  CHECK_THROWS_AS(rewrite(canonical_word(), 2, 0), std::invalid_argument);
  // step 3 only applies between two concave events of one stretch
  CHECK_THROWS_AS(rewrite(canonical_word(), 3, 2), std::invalid_argument);
}

TEST_CASE("step 4 brings single-concave stretches to canonical order") {
  // a mirror arc with its two birth caps drawn in the other theta order
  auto w1 = make_word(
      0, {{Op::birth, 0}, {Op::birth, 2}, {Op::death, 1}, {Op::death, 0}});
  REQUIRE(validate_word(w1).empty());
  CHECK(rewrite(w1, 4, 0).events == canonical_word(false).events);

  // a generator with a disk pinched off above everything
  auto w2 = make_word(0, {{Op::birth, 0},
                          {Op::birth, 1},
                          {Op::birth, 4},
                          {Op::death, 4},
                          {Op::death, 0},
                          {Op::death, 0}});
  REQUIRE(validate_word(w2).empty());
  CHECK(rewrite(w2, 4, 0).events == canonical_word().events);

  // a disk living after the concave birth
  auto w3 = make_word(0, {{Op::birth, 0},
                          {Op::birth, 1},
                          {Op::death, 0},
                          {Op::birth, 2},
                          {Op::death, 2},
                          {Op::death, 0}});
  REQUIRE(validate_word(w3).empty());
  CHECK(rewrite(w3, 4, 0).events == canonical_word().events);

  CHECK_THROWS_AS(rewrite(canonical_word(), 4, 0), std::invalid_argument);
}

TEST_CASE("step 5 deletes concave-free blocks, step 6 opposite pairs") {
  auto oval = make_word(0, {{Op::birth, 0}, {Op::death, 0}});
  auto w = concat(oval, canonical_word());
  auto out = rewrite(w, 5, 0);
  CHECK(out.events == canonical_word().events);
  CHECK(j_of_word(out) == 1);
  CHECK_THROWS_AS(rewrite(w, 5, 1), std::invalid_argument);

  auto pair = concat(canonical_word(), canonical_word(false));
  auto gone = rewrite(pair, 6, 0);
  CHECK(gone.events.empty());
  CHECK_THROWS_AS(rewrite(canonical_multiple(2), 6, 0), std::invalid_argument);

  CHECK(rewrite(canonical_multiple(2), 7, 0).events ==
        canonical_multiple(2).events);  // a one-signed stack is terminal
  CHECK_THROWS_AS(rewrite(pair, 7, 0), std::invalid_argument);
  CHECK_THROWS_AS(rewrite(canonical_multiple(2), 6, 5), std::invalid_argument);
}

TEST_CASE("traces replay and never raise the fiber bound") {
  CurvePattern pat;
  pat.loops.push_back(circle_curve(0, 0, 2));
  pat.loops.push_back(circle_curve(0, 0, 1));
  for (auto w : {encode(pat), encode(delta_curves(quartic_generator_loop())),
                 concat(encode(generator_pattern()),
                        encode(generator_pattern(true)))}) {
    auto r = reduce(w);
    AnnulusWord cur = detail::rotate_to_zero_gap(w);
    int peak = peak_strands(cur);
    int j = j_of_word(cur);
    for (auto& st : r.trace) {
      cur = rewrite(cur, st.step, st.site);
      CHECK(peak_strands(cur) <= peak);
      CHECK(j_of_word(cur) == j);
    }
    CHECK(cur.events == r.terminal.events);
    CHECK(replay(w, r.trace).events == r.terminal.events);
  }
}

TEST_CASE("winding strands without events cancel to nothing") {
  auto r = reduce(make_word(4, {}));
  CHECK(r.n == 0);
  CHECK(r.terminal.events.empty());
  CHECK_THROWS_AS(reduce(make_word(3, {})), std::invalid_argument);
}

TEST_CASE("reduction of perturbed quartic zero sets stays at one") {
  int ok = 0;
  for (uint32_t seed = 1; seed <= 10; ++seed) {
    auto loop = perturb_loop(quartic_generator_loop(), 1e-3, seed);
    try {
      auto r = reduce(encode(delta_curves(loop)));
      CHECK(r.n == 1);
      ok++;
    } catch (const std::exception&) {
      continue;  // perturbation left the admissible region
    }
  }
  CHECK(ok >= 8);
}

TEST_CASE("json round trips for words and traces") {
  auto w = encode(delta_curves(quartic_generator_loop()));
  auto j = word_to_json(w);
  CHECK(j["format"] == 1);
  CHECK(j["start_strands"] == 2);
  CHECK(j["events"][0]["kind"] == "concave");
  CHECK(j["events"][0]["polarity"] == "+");
  auto back = word_from_json(j);
  CHECK(back.events == w.events);
  CHECK(back.start_strands == w.start_strands);

  auto r = reduce(w);
  auto tr = trace_from_json(trace_to_json(r.trace));
  REQUIRE(tr.size() == r.trace.size());
  CHECK(replay(w, tr).events == r.terminal.events);
}
