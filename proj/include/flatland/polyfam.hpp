#pragma once

// Loops of monic even-degree real polynomials and the stratification of
// coefficient space by root patterns. A loop staying inside the "at most
// double roots" region has an integer invariant J, computed here two
// independent ways: a census of tangency events of the zero set of the loop
// in the (theta, u) annulus, and a signed count of transversal crossings of
// the codimension-one strata that bound the forbidden (triple root) locus.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include <flatland/curves.hpp>

namespace flatland {

// multiplicities of the real roots in increasing root order
using RootPattern = std::vector<int>;

namespace detail {

// polynomial coefficients are stored low power to high power

inline double poly_eval(const std::vector<double>& p, double x) {
  double v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline std::complex<double> poly_eval(const std::vector<double>& p,
                                      std::complex<double> x) {
  std::complex<double> v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline std::vector<double> poly_derivative(const std::vector<double>& p) {
  std::vector<double> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(i * p[i]);
  return d;
}

// determinant of the Sylvester matrix of (p, q); vanishes exactly when p and
// q share a root, so with q = p' its sign flips at real double-root events
inline double sylvester_det(const std::vector<double>& p,
                            const std::vector<double>& q) {
  int m = (int)p.size() - 1, n = (int)q.size() - 1;
  int size = m + n;
  if (size <= 0) return 1;
  std::vector<std::vector<double>> a(size, std::vector<double>(size, 0));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) a[r][r + (m - k)] = p[k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) a[n + r][r + (n - k)] = q[k];
  double det = 1;
  for (int c = 0; c < size; ++c) {
    int piv = c;
    for (int r = c + 1; r < size; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < size; ++r) {
      double f = a[r][c] / a[c][c];
      for (int k = c; k < size; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// all complex roots by simultaneous (Durand-Kerner) iteration
inline std::vector<std::complex<double>> all_roots(std::vector<double> p) {
  int d = (int)p.size() - 1;
  if (d <= 0) return {};
  for (auto& c : p) c /= p.back();
  double radius = 1;
  for (int i = 0; i < d; ++i)
    radius = std::max(radius, 2 * std::pow(std::abs(p[i]), 1.0 / (d - i)));
  std::vector<std::complex<double>> z(d);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> w = 1;
  for (int i = 0; i < d; ++i) {
    w *= seed;
    z[i] = radius * w / std::abs(w) * (0.3 + 0.7 * (i + 1.0) / d);
  }
  for (int it = 0; it < 400; ++it) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> den = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) den *= z[i] - z[j];
      if (den == std::complex<double>(0)) {
        z[i] += 1e-6;
        continue;
      }
      auto step = poly_eval(p, z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13 * radius) break;
  }
  return z;
}

struct RootCluster {
  double value = 0;
  int multiplicity = 0;
};

// collapse near-real roots into clusters; complex pairs far from the real
// axis are dropped
inline std::vector<RootCluster> real_clusters(
    const std::vector<std::complex<double>>& roots, double radius) {
  std::vector<double> re;
  for (auto& z : roots)
    if (std::abs(z.imag()) < radius) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  std::vector<RootCluster> out;
  for (double r : re) {
    if (!out.empty() && r - out.back().value < radius) {
      auto& c = out.back();
      c.value = (c.value * c.multiplicity + r) / (c.multiplicity + 1);
      c.multiplicity++;
    } else {
      out.push_back({r, 1});
    }
  }
  return out;
}

inline double root_scale(const std::vector<std::complex<double>>& roots) {
  double s = 1;
  for (auto& z : roots) s = std::max(s, std::abs(z));
  return s;
}

}  // namespace detail

// ---- root patterns and the cell structure ---------------------------------

inline RootPattern pattern_of(const std::vector<double>& poly,
                              bool check = true) {
  auto roots = detail::all_roots(poly);
  auto clusters =
      detail::real_clusters(roots, 1e-4 * detail::root_scale(roots));
  RootPattern w;
  for (auto& c : clusters) w.push_back(c.multiplicity);
  if (check)
    for (int m : w)
      if (m >= 3)
        throw std::domain_error(
            "forbidden locus: root of multiplicity 3 or more");
  return w;
}

inline int cell_dim(const RootPattern& w, int d) {
  int total = 0;
  for (int m : w) total += m;
  if (total > d || (d - total) % 2 != 0)
    throw std::invalid_argument("pattern does not match the degree");
  return d - (total - (int)w.size());
}

// codimension-one faces of the closure of a pattern cell: adjacent root
// collisions with signs +,-,+,... in the pair index, and (when two more real
// roots fit the degree) a double root arriving from a complex pair in each
// gap, with signs -,+,-,... in the gap index. The sign choices are forced,
// up to global orientation, by d(d(w)) = 0; this normalization also makes
// the three strata bounding the forbidden locus sum to it exactly.
inline std::vector<std::pair<RootPattern, int>> cell_boundary(
    const RootPattern& w, int d) {
  cell_dim(w, d);  // validates
  std::map<RootPattern, int> acc;
  int s = (int)w.size();
  for (int i = 0; i + 1 < s; ++i) {
    RootPattern nw(w.begin(), w.end());
    nw[i] += nw[i + 1];
    nw.erase(nw.begin() + i + 1);
    acc[nw] += (i % 2 == 0) ? 1 : -1;
  }
  int total = 0;
  for (int m : w) total += m;
  if (total + 2 <= d) {
    for (int g = 0; g <= s; ++g) {
      RootPattern nw(w.begin(), w.end());
      nw.insert(nw.begin() + g, 2);
      acc[nw] += (g % 2 == 0) ? -1 : 1;
    }
  }
  std::vector<std::pair<RootPattern, int>> out;
  for (auto& [p, c] : acc)
    if (c != 0) out.push_back({p, c});
  return out;
}

// the codimension-one strata crossed transversally by loops avoiding the
// forbidden locus and contributing to its linking number: one double root,
// all other roots simple, an odd number of simple roots above the double one
inline std::vector<RootPattern> strata_crossing_set(int d) {
  std::vector<RootPattern> out;
  for (int ones = 0; 2 + ones <= d; ++ones) {
    if ((d - 2 - ones) % 2 != 0) continue;
    for (int pos = 0; pos <= ones; ++pos) {
      int right = ones - pos;
      if (right % 2 == 0) continue;
      RootPattern w(ones + 1, 1);
      w[pos] = 2;
      out.push_back(w);
    }
  }
  return out;
}

// ---- loops of polynomials --------------------------------------------------

struct PolyLoop {
  struct Series {
    std::vector<double> cos;  // cos[m] multiplies cos(m*theta)
    std::vector<double> sin;  // sin[m] multiplies sin((m+1)*theta)
    double at(double theta) const {
      double v = 0;
      for (size_t m = 0; m < cos.size(); ++m)
        v += cos[m] * std::cos(m * theta);
      for (size_t m = 0; m < sin.size(); ++m)
        v += sin[m] * std::sin((m + 1) * theta);
      return v;
    }
  };
  int degree = 0;
  std::vector<Series> coeffs;  // u^0 .. u^(degree-1); the leading term is 1

  std::vector<double> at(double theta) const {
    std::vector<double> p(degree + 1, 0);
    for (int i = 0; i < degree; ++i) p[i] = coeffs[i].at(theta);
    p[degree] = 1;
    return p;
  }
};

struct LoopEvent {
  double theta = 0;
  double u = 0;            // location of the double root
  RootPattern pattern;     // full pattern at the event
  bool concave = false;    // region {p <= 0} on both vertical sides
  bool plus = false;       // inner normal of {p <= 0} points toward +theta
  bool pair_before = false;  // the colliding real pair exists at theta - 0
};

namespace detail {

inline int real_root_count(const std::vector<double>& p, double scale) {
  auto roots = all_roots(p);
  int n = 0;
  for (auto& z : roots)
    if (std::abs(z.imag()) < 1e-7 * scale) n++;
  return n;
}

inline LoopEvent classify_event(const PolyLoop& loop, double theta) {
  LoopEvent ev;
  ev.theta = theta;
  auto p = loop.at(theta);
  auto roots = all_roots(p);
  double scale = root_scale(roots);
  auto clusters = real_clusters(roots, 1e-4 * scale);
  int doubles = 0;
  for (auto& c : clusters) {
    if (c.multiplicity >= 3)
      throw std::domain_error(
          "forbidden locus at theta=" + std::to_string(theta) +
          ": root of multiplicity 3 or more");
    if (c.multiplicity == 2) {
      doubles++;
      ev.u = c.value;
    }
    ev.pattern.push_back(c.multiplicity);
  }
  if (doubles != 1)
    throw std::runtime_error(
        "loop not generic: event without a unique double root");
  int above = 0;
  for (auto& c : clusters)
    if (c.multiplicity == 1 && c.value > ev.u) above++;
  ev.concave = (above % 2 == 1);
  double h = 1e-3;
  double sp = poly_eval(loop.at(theta + h), ev.u);
  double sm = poly_eval(loop.at(theta - h), ev.u);
  if (sp == 0 || sm == 0 || (sp < 0) == (sm < 0))
    throw std::runtime_error(
        "loop not generic: tangency does not separate the region");
  // inner normal of {p <= 0} toward -theta; calibrated so the standard
  // quartic loop scores +1
  ev.plus = sm < 0;
  ev.pair_before = real_root_count(loop.at(theta - h), scale) ==
                   real_root_count(loop.at(theta + h), scale) + 2;
  return ev;
}

}  // namespace detail

// locate all double-root events of the loop: sign changes of the resultant
// of (p, p') over theta, refined by bisection well past 1e-9
inline std::vector<LoopEvent> track_loop(const PolyLoop& loop,
                                         int resolution = 1024,
                                         int jobs = 1) {
  if (loop.degree < 2 || loop.degree % 2 != 0)
    throw std::invalid_argument("loop degree must be even and at least 2");
  int n = resolution;
  std::vector<double> disc(n);
  auto worker = [&](int lo, int hi) {
    for (int k = lo; k < hi; ++k) {
      double t = (k + 0.5) * kTau / n;
      auto p = loop.at(t);
      disc[k] = detail::sylvester_det(p, detail::poly_derivative(p));
    }
  };
  if (jobs <= 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(worker, n * j / jobs, n * (j + 1) / jobs);
    for (auto& th : pool) th.join();
  }
  double dscale = 0;
  for (double v : disc) dscale = std::max(dscale, std::abs(v));
  if (dscale == 0)
    throw std::runtime_error("loop not generic: resultant vanishes");
  std::vector<LoopEvent> events;
  for (int k = 0; k < n; ++k) {
    double a = (k + 0.5) * kTau / n, b = (k + 1.5) * kTau / n;
    double fa = disc[k], fb = disc[(k + 1) % n];
    if (std::abs(fa) < 1e-13 * dscale)
      throw std::runtime_error(
          "loop not generic: tangent to the double-root locus");
    if ((fa > 0) == (fb > 0)) continue;
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
      double m = 0.5 * (a + b);
      auto p = loop.at(m);
      double fm = detail::sylvester_det(p, detail::poly_derivative(p));
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    events.push_back(detail::classify_event(loop, 0.5 * (a + b)));
  }
  return events;
}

// J by the tangency-event census
inline int j_event_census(const std::vector<LoopEvent>& events) {
  int j = 0;
  for (auto& ev : events)
    if (ev.concave) j += ev.plus ? 1 : -1;
  return j;
}

// J by signed strata crossings: +1 when the real pair is born as theta grows
inline int j_strata_crossings(const std::vector<LoopEvent>& events, int d) {
  auto strata = strata_crossing_set(d);
  int j = 0;
  for (auto& ev : events) {
    if (std::find(strata.begin(), strata.end(), ev.pattern) == strata.end())
      continue;
    j += ev.pair_before ? -1 : 1;
  }
  return j;
}

inline int j_invariant(const PolyLoop& loop, int resolution = 1024,
                       int jobs = 1) {
  auto events = track_loop(loop, resolution, jobs);
  int a = j_event_census(events);
  int b = j_strata_crossings(events, loop.degree);
  if (a != b)
    throw std::logic_error(
        "event census and strata crossings disagree on J");
  return a;
}

// ---- the zero set as an annulus curve pattern ------------------------------

// trace the real root branches of the loop into closed curves; branches never
// cross (roots stay ordered), so matching by sorted position is exact
inline CurvePattern delta_curves(const PolyLoop& loop, int resolution = 1024) {
  auto events = track_loop(loop, resolution);
  double spacing = kTau / resolution;

  struct Fiber {
    double theta;
    std::vector<double> roots;
  };
  auto fiber_at = [&](double theta) {
    Fiber f;
    f.theta = theta;
    auto roots = detail::all_roots(loop.at(theta));
    double scale = detail::root_scale(roots);
    for (auto& z : roots)
      if (std::abs(z.imag()) < 1e-7 * scale) f.roots.push_back(z.real());
    std::sort(f.roots.begin(), f.roots.end());
    return f;
  };

  CurvePattern pat;
  pat.annulus = true;

  if (events.empty()) {
    // every branch winds once around the annulus
    std::vector<ImmersedCurve> loops;
    for (int k = 0; k < resolution; ++k) {
      auto f = fiber_at((k + 0.5) * spacing);
      if (k == 0) loops.resize(f.roots.size());
      if (f.roots.size() != loops.size())
        throw std::runtime_error(
            "branch matching ambiguity: increase the resolution");
      for (size_t i = 0; i < f.roots.size(); ++i)
        loops[i].pts.push_back({f.theta, f.roots[i]});
    }
    for (auto& c : loops) pat.loops.push_back(std::move(c));
    return pat;
  }

  int ne = (int)events.size();
  // interval t runs from events[t] to events[t+1] (the last one wraps)
  struct Arc {
    std::vector<std::array<double, 2>> pts;
  };
  std::vector<std::vector<Arc>> arcs(ne);
  std::vector<int> low_idx(ne);  // index of the lower colliding branch, on
                                 // the side of events[t] where the pair lives
  for (int t = 0; t < ne; ++t) {
    double t0 = events[t].theta;
    double t1 = events[(t + 1) % ne].theta + (t + 1 == ne ? kTau : 0);
    // interior sample thetas, geometrically refined toward both cusps
    std::vector<double> ts;
    for (int q = 12; q >= 1; --q) ts.push_back(t0 + spacing / (1 << q));
    for (double x = t0 + spacing; x < t1 - spacing; x += spacing)
      ts.push_back(x);
    for (int q = 1; q <= 12; ++q) ts.push_back(t1 - spacing / (1 << q));
    std::vector<Fiber> fibers;
    for (double x : ts)
      if (x > t0 && x < t1) fibers.push_back(fiber_at(x));
    size_t m = fibers.front().roots.size();
    for (auto& f : fibers)
      if (f.roots.size() != m)
        throw std::runtime_error(
            "branch matching ambiguity: increase the resolution");
    arcs[t].resize(m);
    for (auto& f : fibers)
      for (size_t i = 0; i < m; ++i)
        arcs[t][i].pts.push_back({f.theta, f.roots[i]});
  }
  for (int t = 0; t < ne; ++t) {
    // which adjacent pair collides at events[t], indexed on the pair side
    auto& ev = events[t];
    auto& side = ev.pair_before ? arcs[(t + ne - 1) % ne] : arcs[t];
    double best = 1e300;
    int bi = 0;
    for (int i = 0; i + 1 < (int)side.size(); ++i) {
      auto& a = ev.pair_before ? side[i].pts.back() : side[i].pts.front();
      auto& b2 =
          ev.pair_before ? side[i + 1].pts.back() : side[i + 1].pts.front();
      double d2v = std::abs(a[1] - ev.u) + std::abs(b2[1] - ev.u);
      if (d2v < best) {
        best = d2v;
        bi = i;
      }
    }
    low_idx[t] = bi;
  }

  // walk the arcs; junction at events[t] joins interval t-1 (right ends) to
  // interval t (left ends); the colliding pair joins to itself through the
  // event point; crossing the seam between interval ne-1 and interval 0 on
  // the wrapped side shifts theta by one period
  struct End {
    int t, i;
    bool left;
    bool operator<(const End& o) const {
      return std::tie(t, i, left) < std::tie(o.t, o.i, o.left);
    }
  };
  std::map<End, bool> used;
  auto partner = [&](End e) -> std::pair<End, bool> {
    // the arc end reached by passing the junction at this end, and whether
    // the event point is interposed
    if (e.left) {
      // junction at events[e.t]
      auto& ev = events[e.t];
      int j = low_idx[e.t];
      if (!ev.pair_before && (e.i == j || e.i == j + 1))
        return {{e.t, e.i == j ? j + 1 : j, true}, true};
      int prev = (e.t + ne - 1) % ne;
      // invert the index shift across the event
      int ip = ev.pair_before ? (e.i < j ? e.i : e.i + 2)
                              : (e.i < j ? e.i : e.i - 2);
      return {{prev, ip, false}, false};
    }
    // right end: junction at events[(e.t + 1) % ne]
    int tn = (e.t + 1) % ne;
    auto& ev = events[tn];
    int j = low_idx[tn];
    if (ev.pair_before && (e.i == j || e.i == j + 1))
      return {{e.t, e.i == j ? j + 1 : j, false}, true};
    int in = ev.pair_before ? (e.i < j ? e.i : e.i - 2)
                            : (e.i < j ? e.i : e.i + 2);
    return {{tn, in, true}, false};
  };
  for (int t0 = 0; t0 < ne; ++t0)
    for (int i0 = 0; i0 < (int)arcs[t0].size(); ++i0) {
      End start{t0, i0, true};
      if (used.count(start)) continue;
      ImmersedCurve curve;
      End at = start;
      double offset = 0;
      while (true) {
        used[{at.t, at.i, true}] = used[{at.t, at.i, false}] = true;
        auto& a = arcs[at.t][at.i].pts;
        if (at.left) {
          for (auto& p : a) curve.pts.push_back({p[0] + offset, p[1]});
        } else {
          for (auto it = a.rbegin(); it != a.rend(); ++it)
            curve.pts.push_back({(*it)[0] + offset, (*it)[1]});
        }
        End leave{at.t, at.i, !at.left};
        auto [nxt, via_event] = partner(leave);
        if (via_event) {
          int te = leave.left ? leave.t : (leave.t + 1) % ne;
          double et = events[te].theta;
          // the wrapped interval ends at events[0].theta + one period
          if (!leave.left && leave.t == ne - 1 && te == 0) et += kTau;
          curve.pts.push_back({et + offset, events[te].u});
        }
        // seam crossings: moving right out of the last interval wraps
        // forward, moving left out of interval 0 wraps backward
        if (!leave.left && leave.t == ne - 1 && nxt.t == 0 && !via_event)
          offset += kTau;
        if (leave.left && leave.t == 0 && nxt.t == ne - 1 && !via_event)
          offset -= kTau;
        if (nxt.t == start.t && nxt.i == start.i && nxt.left == start.left)
          break;
        at = nxt;
      }
      pat.loops.push_back(std::move(curve));
    }
  return pat;
}

// ---- stock loops ------------------------------------------------------------

// (u - 2)(u^3 + cos(theta) u + sin(theta)): one convex and one concave-plus
// event, J = +1, generating loop of the space of at-most-double-root quartics
inline PolyLoop quartic_generator_loop() {
  PolyLoop l;
  l.degree = 4;
  l.coeffs.resize(4);
  l.coeffs[0].sin = {-2};          // -2 sin
  l.coeffs[1].cos = {0, -2};       // -2 cos
  l.coeffs[1].sin = {1};           // + sin
  l.coeffs[2].cos = {0, 1};        // cos
  l.coeffs[3].cos = {-2};          // -2
  return l;
}

inline PolyLoop constant_loop(const std::vector<double>& monic) {
  if (monic.empty() || monic.back() != 1)
    throw std::invalid_argument("constant loop requires a monic polynomial");
  PolyLoop l;
  l.degree = (int)monic.size() - 1;
  l.coeffs.resize(l.degree);
  for (int i = 0; i < l.degree; ++i) l.coeffs[i].cos = {monic[i]};
  return l;
}

inline PolyLoop theta_reverse(const PolyLoop& loop) {
  PolyLoop r = loop;
  for (auto& s : r.coeffs)
    for (auto& v : s.sin) v = -v;
  return r;
}

// precompose with theta -> k * theta (k-fold concatenation of the loop)
inline PolyLoop theta_multiply(const PolyLoop& loop, int k) {
  if (k < 1) throw std::invalid_argument("theta_multiply: k must be >= 1");
  PolyLoop r;
  r.degree = loop.degree;
  r.coeffs.resize(loop.degree);
  for (int i = 0; i < loop.degree; ++i) {
    auto& s = loop.coeffs[i];
    auto& o = r.coeffs[i];
    for (size_t m = 0; m < s.cos.size(); ++m) {
      size_t mm = m * k;
      if (o.cos.size() <= mm) o.cos.resize(mm + 1, 0);
      o.cos[mm] += s.cos[m];
    }
    for (size_t m = 0; m < s.sin.size(); ++m) {
      size_t mm = (m + 1) * k - 1;
      if (o.sin.size() <= mm) o.sin.resize(mm + 1, 0);
      o.sin[mm] += s.sin[m];
    }
  }
  return r;
}

// multiply every fiber polynomial by a fixed monic polynomial q(u)
inline PolyLoop multiply_constant_poly(const PolyLoop& loop,
                                       const std::vector<double>& q) {
  if (q.empty() || q.back() != 1)
    throw std::invalid_argument("factor must be monic");
  int dq = (int)q.size() - 1;
  PolyLoop r;
  r.degree = loop.degree + dq;
  r.coeffs.resize(r.degree);
  auto add = [&](int idx, double scalar, const PolyLoop::Series* s) {
    if (idx >= r.degree || scalar == 0) return;
    auto& o = r.coeffs[idx];
    if (s == nullptr) {  // the implicit constant-one leading coefficient
      if (o.cos.empty()) o.cos.resize(1, 0);
      o.cos[0] += scalar;
      return;
    }
    if (o.cos.size() < s->cos.size()) o.cos.resize(s->cos.size(), 0);
    for (size_t m = 0; m < s->cos.size(); ++m) o.cos[m] += scalar * s->cos[m];
    if (o.sin.size() < s->sin.size()) o.sin.resize(s->sin.size(), 0);
    for (size_t m = 0; m < s->sin.size(); ++m) o.sin[m] += scalar * s->sin[m];
  };
  for (int j = 0; j <= dq; ++j) {
    for (int i = 0; i < loop.degree; ++i) add(i + j, q[j], &loop.coeffs[i]);
    add(loop.degree + j, q[j], nullptr);
  }
  return r;
}

// perturb the Fourier coefficients by up to eps in each slot
inline PolyLoop perturb_loop(const PolyLoop& loop, double eps,
                             uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-eps, eps);
  PolyLoop r = loop;
  for (auto& s : r.coeffs) {
    for (auto& v : s.cos) v += amp(rng);
    for (auto& v : s.sin) v += amp(rng);
  }
  return r;
}

// ---- json -------------------------------------------------------------------

inline nlohmann::json polyloop_to_json(const PolyLoop& loop) {
  nlohmann::json j;
  j["format"] = 1;
  j["degree"] = loop.degree;
  auto cs = nlohmann::json::array();
  for (auto& s : loop.coeffs)
    cs.push_back({{"cos", s.cos}, {"sin", s.sin}});
  j["coeffs"] = cs;
  return j;
}

inline PolyLoop polyloop_from_json(const nlohmann::json& j) {
  PolyLoop l;
  l.degree = j.at("degree").get<int>();
  for (auto& c : j.at("coeffs")) {
    PolyLoop::Series s;
    s.cos = c.at("cos").get<std::vector<double>>();
    s.sin = c.at("sin").get<std::vector<double>>();
    l.coeffs.push_back(std::move(s));
  }
  if ((int)l.coeffs.size() != l.degree)
    throw std::invalid_argument("coefficient count does not match degree");
  return l;
}

inline nlohmann::json loop_events_to_json(
    const std::vector<LoopEvent>& events) {
  auto a = nlohmann::json::array();
  for (auto& ev : events)
    a.push_back({{"theta", ev.theta},
                 {"u", ev.u},
                 {"pattern", ev.pattern},
                 {"kind", ev.concave ? "concave" : "convex"},
                 {"polarity", ev.plus ? "+" : "-"}});
  return a;
}

}  // namespace flatland
