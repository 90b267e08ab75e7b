#pragma once

// Immersed-curve calculus in the (theta, u) plane or annulus, for patterns
// swept by the constant upward field: signed self-intersections and the
// turning-number identity, the checkerboard sign of a point, detection and
// classification of vertical tangencies, and the resulting J invariant.
//
// Curves are dense closed polylines. The ambient is either the plane or the
// annulus (theta periodic with period 2*pi; stored coordinates may unwrap
// across several periods for winding loops).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace flatland {

constexpr double kTau = 6.283185307179586476925286766559;

struct ImmersedCurve {
  std::vector<std::array<double, 2>> pts;  // (theta, u), closed cyclically
};

struct CurvePattern {
  std::vector<ImmersedCurve> loops;
  bool annulus = false;
};

inline ImmersedCurve reverse(const ImmersedCurve& c) {
  ImmersedCurve r = c;
  std::reverse(r.pts.begin(), r.pts.end());
  return r;
}

// ---- certificate ----------------------------------------------------------

namespace detail {

inline double cross2(const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

// closing a loop stored in unwrapped annulus coordinates may jump by a
// multiple of the period; wrap is that multiple (0 in the plane)
inline double closure_wrap(const ImmersedCurve& c, bool annulus) {
  if (!annulus || c.pts.size() < 2) return 0;
  return kTau * std::round((c.pts.back()[0] - c.pts.front()[0]) / kTau);
}

inline std::array<double, 2> seg_end(const ImmersedCurve& c, size_t i,
                                     double wrap) {
  size_t n = c.pts.size();
  if (i + 1 < n) return c.pts[i + 1];
  return {c.pts[0][0] + wrap, c.pts[0][1]};
}

inline std::array<double, 2> seg_dir(const ImmersedCurve& c, size_t i,
                                     double wrap = 0) {
  auto& p = c.pts[i];
  auto q = seg_end(c, i, wrap);
  return {q[0] - p[0], q[1] - p[1]};
}

inline std::array<double, 2> prev_pt(const ImmersedCurve& c, size_t i,
                                     double wrap) {
  size_t n = c.pts.size();
  if (i > 0) return c.pts[i - 1];
  return {c.pts[n - 1][0] - wrap, c.pts[n - 1][1]};
}

inline double curve_scale(const CurvePattern& pat) {
  double lo_u = 1e300, hi_u = -1e300, lo_t = 1e300, hi_t = -1e300;
  for (auto& c : pat.loops)
    for (auto& p : c.pts) {
      lo_t = std::min(lo_t, p[0]);
      hi_t = std::max(hi_t, p[0]);
      lo_u = std::min(lo_u, p[1]);
      hi_u = std::max(hi_u, p[1]);
    }
  return std::max({hi_t - lo_t, hi_u - lo_u, 1e-9});
}

// intersection of open segments p0p1, q0q1; returns parameters in (0,1)
struct SegHit {
  bool hit = false;
  double s = 0, t = 0;
  double sin_angle = 0;
};

inline SegHit seg_intersect(const std::array<double, 2>& p0,
                            const std::array<double, 2>& p1,
                            const std::array<double, 2>& q0,
                            const std::array<double, 2>& q1) {
  SegHit h;
  std::array<double, 2> d{p1[0] - p0[0], p1[1] - p0[1]};
  std::array<double, 2> e{q1[0] - q0[0], q1[1] - q0[1]};
  double den = cross2(d, e);
  double ld = std::hypot(d[0], d[1]), le = std::hypot(e[0], e[1]);
  if (ld == 0 || le == 0) return h;
  if (std::abs(den) < 1e-14 * ld * le) return h;  // parallel
  std::array<double, 2> w{q0[0] - p0[0], q0[1] - p0[1]};
  double s = cross2(w, e) / den;
  double t = cross2(w, d) / den;
  if (s <= 0 || s >= 1 || t <= 0 || t >= 1) return h;
  h.hit = true;
  h.s = s;
  h.t = t;
  h.sin_angle = std::abs(den) / (ld * le);
  return h;
}

}  // namespace detail

inline std::vector<std::string> validate(const CurvePattern& pat) {
  std::vector<std::string> out;
  double scale = detail::curve_scale(pat);
  for (auto& c : pat.loops) {
    size_t n = c.pts.size();
    if (n < 8) {
      out.push_back("loop undersampled");
      continue;
    }
    double wrap = detail::closure_wrap(c, pat.annulus);
    for (size_t i = 0; i < n; ++i) {
      auto d = detail::seg_dir(c, i, wrap);
      if (d[0] == 0 && d[1] == 0) out.push_back("repeated sample point");
      if (d[0] == 0 && d[1] != 0) out.push_back("vertical segment");
      if (std::hypot(d[0], d[1]) > 0.1 * scale)
        out.push_back("sample spacing too coarse");
    }
    // tangencies must be simple: strict one-sided neighbors at each extremum
    for (size_t i = 0; i < n; ++i) {
      double a = detail::prev_pt(c, i, wrap)[0] - c.pts[i][0];
      double b = detail::seg_end(c, i, wrap)[0] - c.pts[i][0];
      if (a * b > 0 && std::abs(a + b) < 1e-12 * scale)
        out.push_back("flat vertical tangency (contact order > 2)");
    }
  }
  // crossings must be transversal and pairwise distinct
  std::vector<std::array<double, 2>> hits;
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
            if (h.sin_angle < 1e-6)
              out.push_back("near-tangential crossing");
            auto d = detail::seg_dir(c1, i, w1);
            hits.push_back(
                {c1.pts[i][0] + h.s * d[0], c1.pts[i][1] + h.s * d[1]});
          }
        }
    }
  for (size_t i = 0; i < hits.size(); ++i)
    for (size_t j = i + 1; j < hits.size(); ++j)
      if (std::hypot(hits[i][0] - hits[j][0], hits[i][1] - hits[j][1]) <
          1e-9 * scale)
        out.push_back("multiple point of order > 2");
  return out;
}

// ---- turning number and Whitney data -------------------------------------

inline int gauss_degree(const ImmersedCurve& c, bool annulus = false) {
  size_t n = c.pts.size();
  double wrap = detail::closure_wrap(c, annulus);
  double total = 0;
  for (size_t i = 0; i < n; ++i) {
    auto d0 = detail::seg_dir(c, (i + n - 1) % n, wrap);
    auto d1 = detail::seg_dir(c, i, wrap);
    total += std::atan2(detail::cross2(d0, d1),
                        d0[0] * d1[0] + d0[1] * d1[1]);
  }
  double k = total / kTau;
  double r = std::round(k);
  if (std::abs(k - r) > 1e-6)
    throw std::runtime_error("turning not integral: sampling too coarse");
  return (int)r;
}

struct SelfIntersections {
  int n_plus = 0;
  int n_minus = 0;
  int mu = 0;
};

// Signed double points. The curve is walked from its lowest point; at a
// double point the ordered pair (first-visit tangent, second-visit tangent)
// counts positive when it is a clockwise frame. Together with mu = +1 when
// the tangent at the lowest point heads in +theta, this makes the turning
// number equal mu + n_plus - n_minus.
inline SelfIntersections self_intersections(const ImmersedCurve& c,
                                            bool annulus = false) {
  size_t n = c.pts.size();
  double wrap = detail::closure_wrap(c, annulus);
  size_t base = 0;
  for (size_t i = 1; i < n; ++i) {
    if (c.pts[i][1] < c.pts[base][1] ||
        (c.pts[i][1] == c.pts[base][1] && c.pts[i][0] < c.pts[base][0]))
      base = i;
  }
  SelfIntersections out;
  {
    auto prev = detail::prev_pt(c, base, wrap);
    auto next = detail::seg_end(c, base, wrap);
    out.mu = (next[0] - prev[0] > 0) ? 1 : -1;
  }
  auto shifts = annulus ? std::vector<double>{-kTau, 0.0, kTau}
                        : std::vector<double>{0.0};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i || (i + 1) % n == j || (j + 1) % n == i) continue;
      for (double sh : shifts) {
        auto q0 = c.pts[j], q1 = detail::seg_end(c, j, wrap);
        q0[0] += sh;
        q1[0] += sh;
        auto h = detail::seg_intersect(c.pts[i], detail::seg_end(c, i, wrap),
                                       q0, q1);
        if (!h.hit) continue;
        if (h.sin_angle < 1e-6)
          throw std::runtime_error("near-tangential crossing");
        double pos_i = std::fmod((double)i + h.s - (double)base + n, (double)n);
        double pos_j = std::fmod((double)j + h.t - (double)base + n, (double)n);
        auto ti = detail::seg_dir(c, i, wrap);
        auto tj = detail::seg_dir(c, j, wrap);
        auto& first = (pos_i < pos_j) ? ti : tj;
        auto& second = (pos_i < pos_j) ? tj : ti;
        if (detail::cross2(first, second) < 0)
          out.n_plus++;
        else
          out.n_minus++;
      }
    }
  return out;
}

// ---- checkerboard sign ----------------------------------------------------

// Parity of upward-ray crossings: +1 in the unbounded region above the
// pattern, flipping across every strand. Vertex hits are resolved by the
// half-open rule; a deterministic sequence of ray shifts handles the case of
// a crossing too close to the probe point itself.
inline int checkerboard_sign(const CurvePattern& pat, double theta,
                             double u) {
  double scale = detail::curve_scale(pat);
  for (int attempt = 0; attempt < 41; ++attempt) {
    int k = (attempt + 1) / 2;
    double t0 = theta + (attempt % 2 ? k : -k) * 1e-7 * scale;
    bool parity = false, bad = false;
    for (auto& c : pat.loops) {
      size_t n = c.pts.size();
      double wrap = detail::closure_wrap(c, pat.annulus);
      for (size_t i = 0; i < n && !bad; ++i) {
        auto& p = c.pts[i];
        auto q = detail::seg_end(c, i, wrap);
        double lo = std::min(p[0], q[0]), hi = std::max(p[0], q[0]);
        int m0 = 0, m1 = 0;
        if (pat.annulus) {
          m0 = (int)std::floor((lo - t0) / kTau) - 1;
          m1 = (int)std::ceil((hi - t0) / kTau) + 1;
        }
        for (int m = m0; m <= m1 && !bad; ++m) {
          double t = t0 + m * kTau;
          bool crosses = (p[0] <= t && t < q[0]) || (q[0] <= t && t < p[0]);
          if (!crosses) continue;
          double s = (t - p[0]) / (q[0] - p[0]);
          double ucross = p[1] + s * (q[1] - p[1]);
          if (std::abs(ucross - u) < 1e-9 * scale) {
            bad = true;  // ray grazes the curve at the probe height
            break;
          }
          if (ucross > u) parity = !parity;
        }
      }
      if (bad) break;
    }
    if (!bad) return parity ? -1 : 1;
  }
  throw std::runtime_error("checkerboard probe point lies on the pattern");
}

// ---- vertical tangencies ----------------------------------------------------

struct TangencyEvent {
  double theta = 0, u = 0;
  bool concave = false;  // trajectory germ inside the region (else a cap)
  bool plus = false;     // inner normal points in -theta (calibrated so the
                         // standard generator pattern scores +1)
  int contact_order = 2;
  int loop = -1;
  int vertex = -1;
};

inline std::vector<TangencyEvent> vertical_tangencies(
    const CurvePattern& pat) {
  std::vector<TangencyEvent> out;
  for (size_t li = 0; li < pat.loops.size(); ++li) {
    auto& c = pat.loops[li];
    size_t n = c.pts.size();
    double wrap = detail::closure_wrap(c, pat.annulus);
    for (size_t i = 0; i < n; ++i) {
      auto prev = detail::prev_pt(c, i, wrap);
      auto next = detail::seg_end(c, i, wrap);
      double before = prev[0] - c.pts[i][0];
      double after = next[0] - c.pts[i][0];
      if (before * after <= 0) continue;  // theta not at a local extremum
      TangencyEvent ev;
      ev.theta = c.pts[i][0];
      ev.u = c.pts[i][1];
      ev.loop = (int)li;
      ev.vertex = (int)i;
      double du1 = std::abs(next[1] - c.pts[i][1]);
      double du0 = std::abs(c.pts[i][1] - prev[1]);
      double delta = 0.5 * std::max(std::min(du0, du1), 1e-12);
      int above = checkerboard_sign(pat, ev.theta, ev.u + delta);
      int below = checkerboard_sign(pat, ev.theta, ev.u - delta);
      if (above != below)
        throw std::runtime_error(
            "tangency with disagreeing sides: pattern not generic");
      ev.concave = (above == -1);
      int opening = after > 0 ? 1 : -1;
      int inner = ev.concave ? -opening : opening;
      ev.plus = inner < 0;
      out.push_back(ev);
    }
  }
  return out;
}

inline int j_from_pattern(const CurvePattern& pat) {
  int j = 0;
  for (auto& ev : vertical_tangencies(pat))
    if (ev.concave) j += ev.plus ? 1 : -1;
  return j;
}

// ---- reports ----------------------------------------------------------------

struct WhitneyReport {
  int degree = 0;
  int mu = 0, n_plus = 0, n_minus = 0;
  int convex_count = 0, concave_count = 0;
  bool whitney_ok = false;  // degree == mu + n_plus - n_minus
  bool euler_ok = false;    // degree == (convex - concave) / 2
};

inline WhitneyReport whitney_report(const ImmersedCurve& c,
                                    const std::vector<TangencyEvent>& events,
                                    bool annulus = false) {
  WhitneyReport r;
  r.degree = gauss_degree(c, annulus);
  auto si = self_intersections(c, annulus);
  r.mu = si.mu;
  r.n_plus = si.n_plus;
  r.n_minus = si.n_minus;
  for (auto& ev : events) (ev.concave ? r.concave_count : r.convex_count)++;
  r.whitney_ok = (r.degree == r.mu + r.n_plus - r.n_minus);
  r.euler_ok = (2 * r.degree == r.convex_count - r.concave_count);
  return r;
}

// ---- json ---------------------------------------------------------------

inline nlohmann::json pattern_to_json(const CurvePattern& pat) {
  nlohmann::json j;
  j["format"] = 1;
  auto loops = nlohmann::json::array();
  for (auto& c : pat.loops) {
    auto l = nlohmann::json::array();
    for (auto& p : c.pts) l.push_back({p[0], p[1]});
    loops.push_back(l);
  }
  j["loops"] = loops;
  j["ambient"] = pat.annulus ? "annulus" : "plane";
  return j;
}

inline CurvePattern pattern_from_json(const nlohmann::json& j) {
  CurvePattern pat;
  pat.annulus = j.at("ambient").get<std::string>() == "annulus";
  for (auto& l : j.at("loops")) {
    ImmersedCurve c;
    for (auto& p : l) c.pts.push_back({p[0].get<double>(), p[1].get<double>()});
    pat.loops.push_back(std::move(c));
  }
  return pat;
}

inline nlohmann::json events_to_json(const std::vector<TangencyEvent>& evs) {
  auto a = nlohmann::json::array();
  for (auto& ev : evs)
    a.push_back({{"theta", ev.theta},
                 {"u", ev.u},
                 {"kind", ev.concave ? "concave" : "convex"},
                 {"polarity", ev.plus ? "+" : "-"},
                 {"contact_order", ev.contact_order},
                 {"loop", ev.loop}});
  return a;
}

// ---- stock curves ---------------------------------------------------------

inline ImmersedCurve circle_curve(double cx = 0, double cu = 0,
                                  double r = 1, int n = 512) {
  ImmersedCurve c;
  for (int k = 0; k < n; ++k) {
    double t = (k + 0.3) * kTau / n;
    c.pts.push_back({cx + r * std::cos(t), cu + r * std::sin(t)});
  }
  return c;
}

inline ImmersedCurve figure_eight_curve(int n = 512) {
  ImmersedCurve c;
  for (int k = 0; k < n; ++k) {
    double t = (k + 0.3) * kTau / n;
    c.pts.push_back({std::sin(2 * t), std::sin(t)});
  }
  return c;
}

inline ImmersedCurve limacon_curve(int n = 512) {
  ImmersedCurve c;
  for (int k = 0; k < n; ++k) {
    double t = (k + 0.3) * kTau / n;
    double r = 1 + 2 * std::cos(t);
    c.pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return c;
}

// thickened arc opening toward +theta; its only concave tangency sits on the
// inner bend with inner normal -theta, so the pattern scores J = +1
inline CurvePattern generator_pattern(bool mirror = false, int n = 512) {
  ImmersedCurve c;
  double r0 = 0.6, r1 = 1.0;
  // asymmetric endpoints keep the two tip caps at distinct theta
  double a0 = -2.0, a1 = 2.3;  // radians, gap on the -theta side
  double rm = 0.5 * (r0 + r1), rt = 0.5 * (r1 - r0);
  int narc = n / 3;
  for (int k = 0; k <= narc; ++k) {  // outer bend
    double t = a0 + (a1 - a0) * k / narc;
    c.pts.push_back({r1 * std::cos(t), r1 * std::sin(t)});
  }
  for (int k = 1; k < narc / 2; ++k) {  // upper tip cap
    double t = a1 + kTau / 2 * k / (narc / 2);
    c.pts.push_back({rm * std::cos(a1) + rt * std::cos(t),
                     rm * std::sin(a1) + rt * std::sin(t)});
  }
  for (int k = 0; k <= narc; ++k) {  // inner bend, backwards
    double t = a1 - (a1 - a0) * k / narc;
    c.pts.push_back({r0 * std::cos(t), r0 * std::sin(t)});
  }
  for (int k = 1; k < narc / 2; ++k) {  // lower tip cap
    double t = a0 + kTau / 2 + kTau / 2 * k / (narc / 2);
    c.pts.push_back({rm * std::cos(a0) + rt * std::cos(t),
                     rm * std::sin(a0) + rt * std::sin(t)});
  }
  if (!mirror)
    for (auto& p : c.pts) p[0] = -p[0];
  CurvePattern pat;
  pat.loops.push_back(std::move(c));
  return pat;
}

// boundary of an immersed one-holed torus: two round annuli plumbed at the
// origin, their second overlap left as four transversal crossings
inline ImmersedCurve genus1_boundary_curve(int n = 1024) {
  double s = std::sqrt(0.5), r = 1.0, eps = 0.12;
  std::array<double, 2> ca{s, s}, cb{s, -s};
  struct Ring {
    std::array<double, 2> c;
    double r;
  };
  // cycle order around the plumbing: a_out, b_out, a_in, b_in
  Ring ring[4] = {{ca, r + eps}, {cb, r + eps}, {ca, r - eps}, {cb, r - eps}};
  auto intersect_near_origin = [&](const Ring& x, const Ring& y) {
    // radical-line construction, pick the point closest to the origin
    double dx = y.c[0] - x.c[0], dy = y.c[1] - x.c[1];
    double d = std::hypot(dx, dy);
    double a = (x.r * x.r - y.r * y.r + d * d) / (2 * d);
    double h = std::sqrt(std::max(0.0, x.r * x.r - a * a));
    double mx = x.c[0] + a * dx / d, my = x.c[1] + a * dy / d;
    std::array<double, 2> p1{mx + h * dy / d, my - h * dx / d};
    std::array<double, 2> p2{mx - h * dy / d, my + h * dx / d};
    return (std::hypot(p1[0], p1[1]) < std::hypot(p2[0], p2[1])) ? p1 : p2;
  };
  ImmersedCurve c;
  int per_arc = n / 4;
  for (int k = 0; k < 4; ++k) {
    auto& rg = ring[(k + 1) % 4];
    auto from = intersect_near_origin(ring[k], rg);
    auto to = intersect_near_origin(rg, ring[(k + 2) % 4]);
    double f0 = std::atan2(from[1] - rg.c[1], from[0] - rg.c[0]);
    double f1 = std::atan2(to[1] - rg.c[1], to[0] - rg.c[0]);
    double forigin = std::atan2(-rg.c[1], -rg.c[0]);
    // sweep from f0 to f1 the way that avoids the plumbing region
    double fwd = std::fmod(f1 - f0 + 2 * kTau, kTau);
    double org = std::fmod(forigin - f0 + 2 * kTau, kTau);
    double sweep = (org < fwd) ? fwd - kTau : fwd;
    for (int i = 0; i < per_arc; ++i) {
      double t = f0 + sweep * i / per_arc;
      c.pts.push_back(
          {rg.c[0] + rg.r * std::cos(t), rg.c[1] + rg.r * std::sin(t)});
    }
  }
  if (gauss_degree(c) != -1) c = reverse(c);
  return c;
}

// replace the subchain between vertices i and j (i < j, short in theta) by a
// finger poking toward +theta; adds one convex cap at the finger tip and one
// concave tangency with inner normal -theta where the finger rejoins
inline ImmersedCurve snake_modify(const ImmersedCurve& c, int i, int j,
                                  double length) {
  if (i < 0 || j <= i || j >= (int)c.pts.size())
    throw std::invalid_argument("snake_modify: bad vertex range");
  auto pi = c.pts[i], pj = c.pts[j];
  if (pi[1] == pj[1])
    throw std::invalid_argument("snake_modify: degenerate finger");
  ImmersedCurve out;
  for (int k = 0; k <= i; ++k) out.pts.push_back(c.pts[k]);
  std::array<double, 2> qi{pi[0] + length, pi[1]};
  std::array<double, 2> qj{pj[0] + length, pj[1]};
  int sub = 16;  // keep the straight runs as dense as the rest
  for (int k = 1; k <= sub; ++k)
    out.pts.push_back({pi[0] + length * k / sub, pi[1]});
  std::array<double, 2> m{0.5 * (qi[0] + qj[0]), 0.5 * (qi[1] + qj[1])};
  double rad = 0.5 * std::hypot(qj[0] - qi[0], qj[1] - qi[1]);
  double a0 = std::atan2(qi[1] - m[1], qi[0] - m[0]);
  int cap = 64;
  for (int k = 1; k < cap; ++k) {
    // half turn through the +theta side of the tip
    double t = a0 + (pi[1] > pj[1] ? -1 : 1) * kTau / 2 * k / cap;
    out.pts.push_back({m[0] + rad * std::cos(t), m[1] + rad * std::sin(t)});
  }
  for (int k = sub; k >= 1; --k)
    out.pts.push_back({pj[0] + length * k / sub, pj[1]});
  for (int k = j; k < (int)c.pts.size(); ++k) out.pts.push_back(c.pts[k]);
  return out;
}

inline ImmersedCurve random_loop(uint32_t seed, int n = 512) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  double ax[4], bx[4], ay[4], by[4];
  for (int k = 0; k < 4; ++k) {
    ax[k] = amp(rng) / (k + 1);
    bx[k] = amp(rng) / (k + 1);
    ay[k] = amp(rng) / (k + 1);
    by[k] = amp(rng) / (k + 1);
  }
  ImmersedCurve c;
  for (int k = 0; k < n; ++k) {
    double t = (k + 0.3) * kTau / n;
    double x = 0, y = 0;
    for (int m = 0; m < 4; ++m) {
      x += ax[m] * std::cos((m + 1) * t) + bx[m] * std::sin((m + 1) * t);
      y += ay[m] * std::cos((m + 1) * t) + by[m] * std::sin((m + 1) * t);
    }
    c.pts.push_back({x, y});
  }
  return c;
}

}  // namespace flatland
