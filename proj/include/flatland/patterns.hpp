#pragma once

// Cyclic event words of curve patterns in the annulus, and their reduction by
// elementary surgeries to a stack of copies of the canonical generator word
// (or of its mirror).
//
// A word is purely combinatorial: each event is a crossing, a birth or a
// death of an adjacent strand pair, tagged with the lower row index. The
// checkerboard data is implicit: gap signs alternate downward from the
// positive outermost gap, so the kind (concave / convex) and the polarity of
// every tangency follow from the strand count and the row parity.

#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <flatland/curves.hpp>

namespace flatland {

struct AnnulusWord {
  enum class Op { crossing, birth, death };
  struct Event {
    Op op = Op::crossing;
    int strand = 0;  // lower of the two rows involved
    auto operator<=>(const Event&) const = default;
  };
  int start_strands = 0;      // fiber cardinality just before the first event
  int bound = 0;              // declared fiber bound, 0 = none
  std::vector<Event> events;  // cyclic, in increasing theta
};

namespace detail {

inline int event_delta(const AnnulusWord::Event& e) {
  if (e.op == AnnulusWord::Op::birth) return 2;
  if (e.op == AnnulusWord::Op::death) return -2;
  return 0;
}

}  // namespace detail

// fiber cardinality just before each event
inline std::vector<int> strand_counts(const AnnulusWord& w) {
  std::vector<int> out(w.events.size());
  int c = w.start_strands;
  for (size_t k = 0; k < w.events.size(); ++k) {
    out[k] = c;
    c += detail::event_delta(w.events[k]);
  }
  return out;
}

struct WordEventClass {
  bool tangency = false;
  bool birth = false;
  bool concave = false;  // an odd number of strands above the pair
  bool plus = false;     // inner normal of the negative side points in -theta
};

inline WordEventClass classify_event(const AnnulusWord::Event& e, int before) {
  WordEventClass out;
  if (e.op == AnnulusWord::Op::crossing) return out;
  out.tangency = true;
  out.birth = e.op == AnnulusWord::Op::birth;
  int above = out.birth ? before - e.strand : before - e.strand - 2;
  out.concave = (above % 2) != 0;
  // a concave pair is born toward +theta exactly when its inner normal
  // points in -theta; for convex caps the relation flips
  out.plus = out.concave == out.birth;
  return out;
}

inline std::vector<std::string> validate_word(const AnnulusWord& w) {
  std::vector<std::string> out;
  if (w.start_strands < 0) out.push_back("negative strand count");
  int c = w.start_strands;
  int peak = c;
  for (auto& e : w.events) {
    if (e.op != AnnulusWord::Op::birth && c < 2)
      out.push_back("event needs two strands");
    int top = (e.op == AnnulusWord::Op::birth) ? c : c - 2;
    if (e.strand < 0 || e.strand > top)
      out.push_back("event strand index out of range");
    c += detail::event_delta(e);
    if (c < 0) out.push_back("negative strand count");
    peak = std::max(peak, c);
  }
  if (c != w.start_strands) out.push_back("cyclic strand count mismatch");
  if (w.bound > 0 && peak > w.bound)
    out.push_back("declared fiber bound exceeded");
  return out;
}

inline int j_of_word(const AnnulusWord& w) {
  int j = 0, c = w.start_strands;
  for (auto& e : w.events) {
    auto cl = classify_event(e, c);
    if (cl.tangency && cl.concave) j += cl.plus ? 1 : -1;
    c += detail::event_delta(e);
  }
  return j;
}

// the four-event word of the thickened arc opening toward +theta: one
// concave-plus birth framed by three convex caps (mirror: opening -theta)
inline AnnulusWord canonical_word(bool plus = true) {
  using Op = AnnulusWord::Op;
  AnnulusWord w;
  w.bound = 4;
  if (plus)
    w.events = {{Op::birth, 0}, {Op::birth, 1}, {Op::death, 0}, {Op::death, 0}};
  else
    w.events = {{Op::birth, 0}, {Op::birth, 0}, {Op::death, 1}, {Op::death, 0}};
  return w;
}

// stacking in theta; both factors must meet the junction fiber in the same
// number of strands
inline AnnulusWord concat(const AnnulusWord& a, const AnnulusWord& b) {
  if (a.start_strands != b.start_strands)
    throw std::invalid_argument("concat: strand counts differ at the junction");
  AnnulusWord w = a;
  w.events.insert(w.events.end(), b.events.begin(), b.events.end());
  w.bound = std::max(a.bound, b.bound);
  return w;
}

inline AnnulusWord canonical_multiple(int n) {
  AnnulusWord w;
  for (int k = 0; k < std::abs(n); ++k) w = concat(w, canonical_word(n > 0));
  return w;
}

// ---- encoding a curve pattern ---------------------------------------------

namespace detail {

inline std::vector<double> fiber_heights(const CurvePattern& pat, double t) {
  std::vector<double> hs;
  for (auto& c : pat.loops) {
    size_t n = c.pts.size();
    double wrap = closure_wrap(c, pat.annulus);
    for (size_t i = 0; i < n; ++i) {
      auto& p = c.pts[i];
      auto q = seg_end(c, i, wrap);
      int m0 = 0, m1 = 0;
      if (pat.annulus) {
        double lo = std::min(p[0], q[0]), hi = std::max(p[0], q[0]);
        m0 = (int)std::floor((lo - t) / kTau) - 1;
        m1 = (int)std::ceil((hi - t) / kTau) + 1;
      }
      for (int m = m0; m <= m1; ++m) {
        double tt = t + m * kTau;
        if (!((p[0] <= tt && tt < q[0]) || (q[0] <= tt && tt < p[0]))) continue;
        double s = (tt - p[0]) / (q[0] - p[0]);
        hs.push_back(p[1] + s * (q[1] - p[1]));
      }
    }
  }
  std::sort(hs.begin(), hs.end());
  return hs;
}

}  // namespace detail

inline AnnulusWord encode(const CurvePattern& pat) {
  using Op = AnnulusWord::Op;
  {
    auto errs = validate(pat);
    if (!errs.empty())
      throw std::invalid_argument("encode: pattern fails its certificate: " +
                                  errs[0]);
  }
  AnnulusWord w;
  if (pat.loops.empty()) return w;

  struct Raw {
    double theta = 0, u = 0;
    bool crossing = false;
    bool concave = false, plus = false;
  };
  std::vector<Raw> raw;
  for (auto& ev : vertical_tangencies(pat))
    raw.push_back({ev.theta, ev.u, false, ev.concave, ev.plus});
  // transversal crossings, enumerated the same way the certificate does
  auto shifts = pat.annulus ? std::vector<double>{-kTau, 0.0, kTau}
                            : std::vector<double>{0.0};
  for (size_t a = 0; a < pat.loops.size(); ++a)
    for (size_t b = a; b < pat.loops.size(); ++b) {
      auto &c1 = pat.loops[a], &c2 = pat.loops[b];
      double w1 = detail::closure_wrap(c1, pat.annulus);
      double w2 = detail::closure_wrap(c2, pat.annulus);
      size_t n1 = c1.pts.size(), n2 = c2.pts.size();
      for (size_t i = 0; i < n1; ++i)
        for (size_t j = (a == b ? i + 1 : 0); j < n2; ++j) {
          if (a == b && (j == i || (i + 1) % n1 == j || (j + 1) % n2 == i))
            continue;
          for (double sh : shifts) {
            auto q0 = c2.pts[j], q1 = detail::seg_end(c2, j, w2);
            q0[0] += sh;
            q1[0] += sh;
            auto h = detail::seg_intersect(c1.pts[i],
                                           detail::seg_end(c1, i, w1), q0, q1);
            if (!h.hit) continue;
            auto d = detail::seg_dir(c1, i, w1);
            raw.push_back({c1.pts[i][0] + h.s * d[0],
                           c1.pts[i][1] + h.s * d[1], true});
          }
        }
    }
  if (pat.annulus)
    for (auto& r : raw) r.theta -= kTau * std::floor(r.theta / kTau);
  std::sort(raw.begin(), raw.end(),
            [](const Raw& x, const Raw& y) { return x.theta < y.theta; });

  if (raw.empty()) {  // winding strands without events
    w.start_strands = (int)detail::fiber_heights(pat, 0.1234).size();
    w.bound = w.start_strands;
    return w;
  }
  double min_gap = kTau;
  for (size_t k = 0; k + 1 < raw.size(); ++k)
    min_gap = std::min(min_gap, raw[k + 1].theta - raw[k].theta);
  if (pat.annulus && raw.size() >= 2)
    min_gap = std::min(min_gap, raw.front().theta + kTau - raw.back().theta);
  if (min_gap < 1e-7)
    throw std::domain_error(
        "encode: coincident event angles, perturbation required");
  double eps = std::min(0.25 * min_gap, 1e-3);

  w.start_strands =
      (int)detail::fiber_heights(pat, raw.front().theta - eps).size();
  int c = w.start_strands;
  int peak = c;
  for (auto& r : raw) {
    auto before = detail::fiber_heights(pat, r.theta - eps);
    auto after = detail::fiber_heights(pat, r.theta + eps);
    if ((int)before.size() != c)
      throw std::runtime_error("encode: inconsistent fiber counts");
    auto row_below = [&](const std::vector<double>& hs) {
      return (int)(std::lower_bound(hs.begin(), hs.end(), r.u) - hs.begin()) -
             1;
    };
    AnnulusWord::Event e;
    if (r.crossing) {
      if (after.size() != before.size())
        throw std::runtime_error("encode: fiber count jumps at a crossing");
      e.op = Op::crossing;
      e.strand = row_below(before);
    } else if (after.size() == before.size() + 2) {
      e.op = Op::birth;
      e.strand = row_below(after);
    } else if (before.size() == after.size() + 2) {
      e.op = Op::death;
      e.strand = row_below(before);
    } else {
      throw std::runtime_error("encode: tangency without a strand pair");
    }
    if (e.strand < 0 ||
        e.strand > (int)std::max(before.size(), after.size()) - 2)
      throw std::runtime_error("encode: event row out of range");
    if (!r.crossing) {
      auto cl = classify_event(e, c);
      if (cl.concave != r.concave || cl.plus != r.plus)
        throw std::logic_error("encode: polarity disagrees with row parity");
    }
    w.events.push_back(e);
    c += detail::event_delta(e);
    peak = std::max(peak, c);
  }
  if (c != w.start_strands)
    throw std::runtime_error("encode: fiber count fails to close up");
  w.bound = peak;
  auto errs = validate_word(w);
  if (!errs.empty()) throw std::logic_error("encode: " + errs[0]);
  return w;
}

// ---- rewriting --------------------------------------------------------------

namespace detail {

// canonical representation of the cyclic word: start at the first empty gap
inline AnnulusWord rotate_to_zero_gap(AnnulusWord w) {
  auto counts = strand_counts(w);
  for (size_t g = 0; g < counts.size(); ++g)
    if (counts[g] == 0) {
      std::rotate(w.events.begin(), w.events.begin() + g, w.events.end());
      w.start_strands = 0;
      return w;
    }
  return w;
}

struct Block {
  int first = 0;
  int length = 0;
  int concave = 0;
  bool crossing = false;
};

// maximal stretches of events between empty gaps; requires the rotated
// representation so no stretch wraps around
inline std::vector<Block> blocks_of(const AnnulusWord& w) {
  std::vector<Block> out;
  if (w.events.empty()) return out;
  auto counts = strand_counts(w);
  if (counts[0] != 0)
    throw std::invalid_argument("word has no empty fiber: clear one first");
  Block cur;
  for (size_t k = 0; k < w.events.size(); ++k) {
    if (counts[k] == 0 && cur.length > 0) {
      out.push_back(cur);
      cur = Block{};
    }
    if (cur.length == 0) cur.first = (int)k;
    if (w.events[k].op == AnnulusWord::Op::crossing) cur.crossing = true;
    auto cl = classify_event(w.events[k], counts[k]);
    if (cl.tangency && cl.concave) cur.concave++;
    cur.length++;
  }
  out.push_back(cur);
  return out;
}

inline std::vector<AnnulusWord::Event> block_events(const AnnulusWord& w,
                                                    const Block& b) {
  return {w.events.begin() + b.first, w.events.begin() + b.first + b.length};
}

// Within a crossing-free stretch entered at fiber count zero: repeatedly
// cancel strand pairs that are born and die together without being touched
// in between (0-surgery on the disk they bound), then bring a four-event
// remainder into the canonical order by sliding independent events past each
// other in theta. Returns false when the stretch resists (caller escalates).
inline bool normalize_block(std::vector<AnnulusWord::Event>& ev) {
  using Op = AnnulusWord::Op;
  for (auto& e : ev)
    if (e.op == Op::crossing) return false;
  for (bool removed = true; removed;) {
    removed = false;
    size_t n = ev.size();
    std::vector<std::vector<int>> state(n);  // strand ids, bottom first
    std::vector<std::array<int, 2>> made(n, {-1, -1}), killed(n, {-1, -1});
    std::vector<int> rows;
    int next_id = 0;
    for (size_t k = 0; k < n; ++k) {
      state[k] = rows;
      int s = ev[k].strand;
      if (ev[k].op == Op::birth) {
        rows.insert(rows.begin() + s, {next_id, next_id + 1});
        made[k] = {next_id, next_id + 1};
        next_id += 2;
      } else {
        killed[k] = {rows[s], rows[s + 1]};
        rows.erase(rows.begin() + s, rows.begin() + s + 2);
      }
    }
    for (size_t d = 0; d < n && !removed; ++d) {
      if (ev[d].op != Op::death) continue;
      size_t b = n;
      for (size_t k = 0; k < d; ++k)
        if (made[k] == killed[d]) {
          b = k;
          break;
        }
      if (b == n) continue;
      // only a convex pair bounds a disk; the death has the same kind
      if (((int)state[b].size() - ev[b].strand) % 2 != 0) continue;
      bool ok = true;
      std::vector<int> shift(n, 0);
      for (size_t k = b + 1; k < d && ok; ++k) {
        auto it = std::find(state[k].begin(), state[k].end(), killed[d][0]);
        int r = (int)(it - state[k].begin());
        int s = ev[k].strand;
        if (ev[k].op == Op::birth) {
          if (s == r + 1) ok = false;  // would land between the pair
          else if (s >= r + 2) shift[k] = -2;
        } else {
          if (s <= r + 1 && s + 1 >= r) ok = false;  // touches the pair
          else if (s >= r + 2) shift[k] = -2;
        }
      }
      if (!ok) continue;
      std::vector<AnnulusWord::Event> out;
      for (size_t k = 0; k < n; ++k) {
        if (k == b || k == d) continue;
        auto e = ev[k];
        e.strand += shift[k];
        out.push_back(e);
      }
      ev = std::move(out);
      removed = true;
    }
  }
  if (ev.empty()) return true;
  int concave = 0;
  bool concave_birth = false;
  {
    int c = 0;
    for (auto& e : ev) {
      auto cl = classify_event(e, c);
      if (cl.tangency && cl.concave) {
        concave++;
        concave_birth = cl.birth;
      }
      c += event_delta(e);
    }
  }
  if (concave != 1 || ev.size() != 4) return false;
  auto target = canonical_word(concave_birth).events;
  // breadth-first over exchanges of neighbouring same-kind events; counts
  // along the stretch are unchanged, so the fiber bound cannot grow
  std::set<std::vector<AnnulusWord::Event>> seen{ev};
  std::queue<std::vector<AnnulusWord::Event>> q;
  q.push(ev);
  while (!q.empty()) {
    auto cur = q.front();
    q.pop();
    if (cur == target) {
      ev = cur;
      return true;
    }
    for (size_t k = 0; k + 1 < cur.size(); ++k) {
      auto e1 = cur[k], e2 = cur[k + 1];
      if (e1.op != e2.op || e1.op == Op::crossing) continue;
      int i = e1.strand, j = e2.strand;
      auto nxt = cur;
      if (e1.op == Op::birth) {
        if (j == i + 1) continue;  // second pair sits between the first
        if (j >= i + 2) {
          nxt[k] = {Op::birth, j - 2};
          nxt[k + 1] = {Op::birth, i};
        } else {
          nxt[k] = {Op::birth, j};
          nxt[k + 1] = {Op::birth, i + 2};
        }
      } else {
        if (j == i - 1) continue;
        if (j >= i) {
          nxt[k] = {Op::death, j + 2};
          nxt[k + 1] = {Op::death, i};
        } else {
          nxt[k] = {Op::death, j};
          nxt[k + 1] = {Op::death, i - 2};
        }
      }
      if (seen.insert(nxt).second) q.push(nxt);
    }
  }
  return false;
}

}  // namespace detail

// The seven surgery steps. Sites: step 1 takes an event index; steps 2 and 3
// a gap index (the gap before that event); steps 4, 5 and 6 a block index in
// the rotated representation; step 7 verifies the terminal form. All steps
// return the rotated representation and never raise the fiber bound.
inline AnnulusWord rewrite(const AnnulusWord& input, int step, int site) {
  using Op = AnnulusWord::Op;
  {
    auto errs = validate_word(input);
    if (!errs.empty()) throw std::invalid_argument("rewrite: " + errs[0]);
  }
  AnnulusWord w = detail::rotate_to_zero_gap(input);
  auto counts = strand_counts(w);
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("step " + std::to_string(step) + ": " + why);
  };
  auto canon_k = canonical_word(true).events;
  auto canon_m = canonical_word(false).events;
  switch (step) {
    case 1: {  // resolve a crossing; no tangency data changes
      if (site < 0 || site >= (int)w.events.size() ||
          w.events[site].op != Op::crossing)
        fail("site is not a crossing");
      w.events.erase(w.events.begin() + site);
      break;
    }
    case 2:
    case 3: {  // empty the fiber at a gap by capping pairs from the bottom;
               // every cap closes a negative gap, so only convex events appear
      if (w.events.empty() ? site != 0
                           : (site < 0 || site >= (int)w.events.size()))
        fail("no such gap");
      int m = w.events.empty() ? w.start_strands : counts[site];
      if (m == 0) fail("fiber already empty");
      if (m % 2) fail("odd fiber cardinality");
      if (step == 3) {  // must separate two concave events of one stretch
        size_t e = w.events.size();
        auto concave_at = [&](size_t k) {
          auto cl = classify_event(w.events[k], counts[k]);
          return cl.tangency && cl.concave;
        };
        bool fwd = false, bwd = false;
        for (size_t k = site, n = 0; n < e; ++n, k = (k + 1) % e) {
          if (concave_at(k)) {
            fwd = true;
            break;
          }
          if (counts[(k + 1) % e] == 0) break;
        }
        for (size_t k = (site + e - 1) % e, n = 0; n < e;
             ++n, k = (k + e - 1) % e) {
          if (concave_at(k)) {
            bwd = true;
            break;
          }
          if (counts[k] == 0) break;
        }
        if (!fwd || !bwd) fail("gap does not separate two concave events");
      }
      std::vector<AnnulusWord::Event> ins;
      for (int k = 0; k < m / 2; ++k) ins.push_back({Op::death, 0});
      for (int k = 0; k < m / 2; ++k) ins.push_back({Op::birth, 0});
      w.events.insert(w.events.begin() + site, ins.begin(), ins.end());
      break;
    }
    case 4: {  // put a single-concave stretch into the canonical order
      auto bl = detail::blocks_of(w);
      if (site < 0 || site >= (int)bl.size()) fail("no such block");
      auto& B = bl[site];
      if (B.crossing) fail("block holds a crossing: resolve it first");
      if (B.concave != 1) fail("block does not hold exactly one concave event");
      auto ev = detail::block_events(w, B);
      if (ev == canon_k || ev == canon_m) fail("block already canonical");
      if (!detail::normalize_block(ev))
        throw std::runtime_error(
            "step 4: block resists canonical form (structural error)");
      w.events.erase(w.events.begin() + B.first,
                     w.events.begin() + B.first + B.length);
      w.events.insert(w.events.begin() + B.first, ev.begin(), ev.end());
      break;
    }
    case 5: {  // a concave-free stretch bounds disks only: 0-surgery them away
      auto bl = detail::blocks_of(w);
      if (site < 0 || site >= (int)bl.size()) fail("no such block");
      auto& B = bl[site];
      if (B.crossing) fail("block holds a crossing: resolve it first");
      if (B.concave != 0) fail("block holds a concave event");
      w.events.erase(w.events.begin() + B.first,
                     w.events.begin() + B.first + B.length);
      break;
    }
    case 6: {  // cancel two neighbouring canonical blocks of opposite polarity
      auto bl = detail::blocks_of(w);
      if (bl.size() < 2) fail("needs two blocks");
      if (site < 0 || site >= (int)bl.size()) fail("no such block");
      auto A = bl[site];
      auto B = bl[(site + 1) % bl.size()];
      auto a = detail::block_events(w, A), b = detail::block_events(w, B);
      if (!((a == canon_k && b == canon_m) || (a == canon_m && b == canon_k)))
        fail("blocks are not a canonical pair of opposite polarity");
      if (A.first < B.first) std::swap(A, B);
      w.events.erase(w.events.begin() + A.first,
                     w.events.begin() + A.first + A.length);
      w.events.erase(w.events.begin() + B.first,
                     w.events.begin() + B.first + B.length);
      break;
    }
    case 7: {  // verify the terminal form (a one-signed stack or empty)
      if (w.events.empty()) {
        if (w.start_strands > 0) fail("strands wind without events");
        break;
      }
      int plus = 0, minus = 0;
      for (auto& B : detail::blocks_of(w)) {
        auto ev = detail::block_events(w, B);
        if (ev == canon_k)
          plus++;
        else if (ev == canon_m)
          minus++;
        else
          fail("word is not a stack of canonical blocks");
      }
      if (plus && minus) fail("blocks of both polarities remain");
      break;
    }
    default:
      fail("no such step");
  }
  w = detail::rotate_to_zero_gap(w);
  auto errs = validate_word(w);
  if (!errs.empty())
    throw std::logic_error("rewrite produced an invalid word: " + errs[0]);
  return w;
}

struct ReduceStep {
  int step = 0;
  int site = 0;
};

struct ReduceResult {
  int n = 0;
  std::vector<ReduceStep> trace;
  AnnulusWord terminal;
};

inline AnnulusWord replay(const AnnulusWord& w0,
                          const std::vector<ReduceStep>& trace) {
  AnnulusWord w = detail::rotate_to_zero_gap(w0);
  for (auto& st : trace) w = rewrite(w, st.step, st.site);
  return w;
}

// Deterministic schedule over the seven steps, always at the least admissible
// site. Terminates with n copies of the canonical word (mirror copies for
// n < 0, nothing for n = 0) where n is the concave polarity census.
inline ReduceResult reduce(const AnnulusWord& input) {
  {
    auto errs = validate_word(input);
    if (!errs.empty()) throw std::invalid_argument("reduce: " + errs[0]);
  }
  if (input.start_strands % 2)
    throw std::invalid_argument(
        "reduce: odd fiber cardinality, not a boundary pattern");
  ReduceResult res;
  const int j0 = j_of_word(input);
  AnnulusWord w = detail::rotate_to_zero_gap(input);
  auto apply = [&](int step, int site) {
    AnnulusWord next = rewrite(w, step, site);
    if (j_of_word(next) != j0)
      throw std::logic_error("reduce: a rewrite changed the invariant");
    res.trace.push_back({step, site});
    w = std::move(next);
  };
  auto canon_k = canonical_word(true).events;
  auto canon_m = canonical_word(false).events;
  size_t guard = 64 + 16 * w.events.size() * (w.events.size() + 4);
  for (size_t iter = 0;; ++iter) {
    if (iter > guard)
      throw std::runtime_error("reduce: no progress (structural error)");
    auto counts = strand_counts(w);
    int cross = -1;
    for (size_t k = 0; k < w.events.size(); ++k)
      if (w.events[k].op == AnnulusWord::Op::crossing) {
        cross = (int)k;
        break;
      }
    if (cross >= 0) {
      apply(1, cross);
      continue;
    }
    if (w.events.empty() && w.start_strands == 0) break;
    if (w.start_strands != 0) {  // no empty gap anywhere: clear one fiber
      apply(2, 0);
      continue;
    }
    auto bl = detail::blocks_of(w);
    bool did = false;
    for (auto& B : bl) {  // separate concave events sharing a stretch
      if (B.concave < 2) continue;
      for (int k = B.first; k < B.first + B.length; ++k) {
        auto cl = classify_event(w.events[k], counts[k]);
        if (cl.tangency && cl.concave) {
          apply(3, k + 1);
          did = true;
          break;
        }
      }
      break;
    }
    if (did) continue;
    for (size_t bi = 0; bi < bl.size() && !did; ++bi) {
      if (bl[bi].concave != 1) continue;
      auto ev = detail::block_events(w, bl[bi]);
      if (ev == canon_k || ev == canon_m) continue;
      apply(4, (int)bi);
      did = true;
    }
    if (did) continue;
    for (size_t bi = 0; bi < bl.size() && !did; ++bi)
      if (bl[bi].concave == 0) {
        apply(5, (int)bi);
        did = true;
      }
    if (did) continue;
    for (size_t bi = 0; bi < bl.size() && !did; ++bi) {
      auto a = detail::block_events(w, bl[bi]);
      auto b = detail::block_events(w, bl[(bi + 1) % bl.size()]);
      if ((a == canon_k && b == canon_m) || (a == canon_m && b == canon_k)) {
        apply(6, (int)bi);
        did = true;
      }
    }
    if (did) continue;
    break;
  }
  apply(7, 0);
  int n = 0;
  if (!w.events.empty()) {
    auto bl = detail::blocks_of(w);
    n = (int)bl.size();
    if (detail::block_events(w, bl[0]) == canon_m) n = -n;
  }
  if (n != j0)
    throw std::logic_error(
        "reduce: terminal multiplicity disagrees with the census");
  res.n = n;
  res.terminal = std::move(w);
  return res;
}

// ---- json ---------------------------------------------------------------

inline nlohmann::json word_to_json(const AnnulusWord& w) {
  nlohmann::json j;
  j["format"] = 1;
  j["start_strands"] = w.start_strands;
  j["bound"] = w.bound;
  auto evs = nlohmann::json::array();
  int c = w.start_strands;
  for (auto& e : w.events) {
    nlohmann::json o;
    o["op"] = e.op == AnnulusWord::Op::crossing ? "crossing"
              : e.op == AnnulusWord::Op::birth  ? "birth"
                                                : "death";
    o["strand"] = e.strand;
    o["strands_before"] = c;
    auto cl = classify_event(e, c);
    if (cl.tangency) {
      o["kind"] = cl.concave ? "concave" : "convex";
      o["polarity"] = cl.plus ? "+" : "-";
    }
    evs.push_back(o);
    c += detail::event_delta(e);
  }
  j["events"] = evs;
  return j;
}

inline AnnulusWord word_from_json(const nlohmann::json& j) {
  AnnulusWord w;
  w.start_strands = j.at("start_strands").get<int>();
  w.bound = j.value("bound", 0);
  for (auto& o : j.at("events")) {
    std::string op = o.at("op").get<std::string>();
    AnnulusWord::Event e;
    if (op == "crossing")
      e.op = AnnulusWord::Op::crossing;
    else if (op == "birth")
      e.op = AnnulusWord::Op::birth;
    else if (op == "death")
      e.op = AnnulusWord::Op::death;
    else
      throw std::invalid_argument("unknown event op: " + op);
    e.strand = o.at("strand").get<int>();
    w.events.push_back(e);
  }
  return w;
}

inline nlohmann::json trace_to_json(const std::vector<ReduceStep>& tr) {
  auto a = nlohmann::json::array();
  for (auto& st : tr) a.push_back({{"step", st.step}, {"site", st.site}});
  return a;
}

inline std::vector<ReduceStep> trace_from_json(const nlohmann::json& j) {
  std::vector<ReduceStep> out;
  for (auto& o : j)
    out.push_back({o.at("step").get<int>(), o.at("site").get<int>()});
  return out;
}

}  // namespace flatland
