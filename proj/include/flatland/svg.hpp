// SVG emission: strip diagrams of assembled surfaces, curve patterns in the
// 800x400 annulus viewport, and wiring diagrams of annulus words.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "curves.hpp"
#include "patterns.hpp"

namespace flatland {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline void svg_open(std::ostringstream& o, int w, int h) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
    << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  o << "<rect width=\"" << w << "\" height=\"" << h
    << "\" fill=\"white\"/>\n";
}

inline void svg_line(std::ostringstream& o, double x1, double y1, double x2,
                     double y2, const char* stroke, const char* extra = "") {
  o << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\""
    << fmt(x2) << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke
    << "\" stroke-width=\"2\"" << extra << "/>\n";
}

inline void svg_text(std::ostringstream& o, double x, double y,
                     const std::string& s, const char* fill = "black") {
  o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
    << "\" font-size=\"12\" font-family=\"monospace\" fill=\"" << fill
    << "\">" << s << "</text>\n";
}

// glyph for a tangency event: circle for convex, square for concave,
// green for plus, red for minus
inline void svg_event_glyph(std::ostringstream& o, double x, double y,
                            bool concave, bool plus) {
  const char* fill = plus ? "#2a9d2a" : "#d03030";
  if (concave)
    o << "<rect x=\"" << fmt(x - 5) << "\" y=\"" << fmt(y - 5)
      << "\" width=\"10\" height=\"10\" fill=\"" << fill << "\"/>\n";
  else
    o << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
      << "\" r=\"5\" fill=\"" << fill << "\"/>\n";
  svg_text(o, x + 7, y - 7, plus ? "+" : "-", fill);
}

}  // namespace detail

// ---- surface strip diagram --------------------------------------------------

// one column per half-edge: barycenter fiber on the left edge of the column,
// vertex fiber on the right, boundary lines colored by flow direction
inline std::string surface_svg(const TrivalentGraph& g, const Tricoloring& c) {
  using detail::fmt;
  std::ostringstream o;
  int slot = 110;
  int width = std::max(800, slot * std::max(1, g.half_edges) + 20);
  detail::svg_open(o, width, 400);
  auto at = g.vertex_lookup();
  std::vector<int> edge_of(g.half_edges, -1);
  {
    auto ges = g.edges();
    for (int e = 0; e < (int)ges.size(); ++e) {
      edge_of[ges[e].first] = e;
      edge_of[ges[e].second] = e;
    }
  }
  auto level_y = [](int l) { return 360.0 - (l - 1) * 140.0; };
  for (int h = 0; h < g.half_edges; ++h) {
    double xb = 20.0 + h * slot;
    double xw = xb + 80.0;
    int w = at[h];
    bool uni = g.stars[w].size() == 1;
    // barycenter fiber, levels 2..3
    detail::svg_line(o, xb, level_y(2), xb, level_y(3), "black");
    // vertex fiber
    if (uni) {
      o << "<circle cx=\"" << fmt(xw) << "\" cy=\"" << fmt(level_y(2))
        << "\" r=\"4\" fill=\"black\"/>\n";
    } else {
      detail::svg_line(o, xw, level_y(1), xw, level_y(3), "black");
      o << "<circle cx=\"" << fmt(xw) << "\" cy=\"" << fmt(level_y(2))
        << "\" r=\"4\" fill=\"#d03030\"/>\n";
    }
    // boundary lines of the strip: entry in red, exit in blue
    int lo_level = 2, up_level = 2;
    bool level_line = false;
    if (!uni) {
      switch (c.color[h]) {
        case Color::A: lo_level = 1; up_level = 2; break;
        case Color::B: lo_level = 2; up_level = 3; break;
        case Color::C: lo_level = 1; up_level = 3; level_line = true; break;
        default: lo_level = 2; up_level = 2; break;
      }
    }
    detail::svg_line(o, xb, level_y(2), xw, level_y(lo_level), "#d03030");
    detail::svg_line(o, xb, level_y(3), xw, level_y(up_level), "#3050d0");
    if (level_line)
      detail::svg_line(o, xb, level_y(2), xw, level_y(2), "gray",
                       " stroke-dasharray=\"5,4\"");
    detail::svg_text(o, xb + 26, 390,
                     "h" + std::to_string(h) + " " +
                         (uni ? "cap" : color_name(c.color[h])) + " v" +
                         std::to_string(w));
    detail::svg_text(o, xb + 26, level_y(3) - 8,
                     "e" + std::to_string(edge_of[h]));
  }
  o << "</svg>\n";
  return o.str();
}

// ---- curve pattern ------------------------------------------------------------

// fixed 800x400 viewport, theta horizontal, u vertical (up); annulus patterns
// span one full period, planar ones get a bounding box with a margin
inline std::string pattern_svg(const CurvePattern& pat) {
  std::ostringstream o;
  detail::svg_open(o, 800, 400);
  double x0 = 0, x1 = kTau, y0 = -1, y1 = 1;
  if (!pat.annulus) {
    x0 = y0 = 1e300;
    x1 = y1 = -1e300;
    for (auto& c : pat.loops)
      for (auto& p : c.pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
      }
  } else {
    y0 = 1e300;
    y1 = -1e300;
    for (auto& c : pat.loops)
      for (auto& p : c.pts) {
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
      }
  }
  double mx = 0.05 * std::max(x1 - x0, 1e-9);
  double my = 0.05 * std::max(y1 - y0, 1e-9);
  if (!pat.annulus) {
    x0 -= mx;
    x1 += mx;
  }
  y0 -= my;
  y1 += my;
  auto X = [&](double t) { return 20 + (t - x0) / (x1 - x0) * 760; };
  auto Y = [&](double u) { return 380 - (u - y0) / (y1 - y0) * 360; };
  auto wrap = [&](double t) {
    if (!pat.annulus) return t;
    double r = std::fmod(t, kTau);
    return r < 0 ? r + kTau : r;
  };
  for (auto& c : pat.loops) {
    size_t n = c.pts.size();
    for (size_t i = 0; i < n; ++i) {
      auto a = c.pts[i];
      auto b = c.pts[(i + 1) % n];
      double ta = wrap(a[0]);
      double tb = ta + (b[0] - a[0]);  // keep the segment short, then clip
      if (pat.annulus && (tb > kTau || tb < 0)) {
        // draw the wrapped copy too
        double shift = tb > kTau ? -kTau : kTau;
        detail::svg_line(o, X(ta + shift), Y(a[1]), X(tb + shift), Y(b[1]),
                         "black");
      }
      detail::svg_line(o, X(ta), Y(a[1]), X(tb), Y(b[1]), "black");
    }
  }
  for (auto& ev : vertical_tangencies(pat))
    detail::svg_event_glyph(o, X(wrap(ev.theta)), Y(ev.u), ev.concave,
                            ev.plus);
  o << "</svg>\n";
  return o.str();
}

// ---- word wiring diagram ------------------------------------------------------

// strands as horizontal tracks, one column per event; births and deaths are
// drawn as half-circle caps, crossings as an X between adjacent tracks
inline std::string word_svg(const AnnulusWord& w) {
  using Ev = AnnulusWord::Event;
  std::ostringstream o;
  detail::svg_open(o, 800, 400);
  auto counts = strand_counts(w);
  int peak = w.start_strands;
  for (size_t i = 0; i < w.events.size(); ++i)
    peak = std::max(peak, counts[i] + detail::event_delta(w.events[i]));
  peak = std::max(peak, 2);
  int cols = (int)w.events.size() + 1;
  auto X = [&](double i) { return 40 + i * 720.0 / cols; };
  auto Y = [&](double s) { return 360 - (s + 0.5) * 320.0 / peak; };
  for (size_t i = 0; i < w.events.size(); ++i) {
    const Ev& e = w.events[i];
    int before = counts[i];
    double xa = X((double)i), xb = X(i + 1.0);
    auto cls = classify_event(e, before);
    for (int s = 0; s < before; ++s) {
      int t = s;  // track on the right side of the column
      if (e.op == AnnulusWord::Op::crossing)
        t = (s == e.strand) ? s + 1 : (s == e.strand + 1 ? s - 1 : s);
      else if (e.op == AnnulusWord::Op::birth)
        t = (s >= e.strand) ? s + 2 : s;
      else if (s == e.strand || s == e.strand + 1)
        t = -1;  // dies into the cap
      else if (s > e.strand + 1)
        t = s - 2;
      if (t >= 0) detail::svg_line(o, xa, Y(s), xb, Y(t), "black");
    }
    double xm = 0.5 * (xa + xb);
    if (e.op == AnnulusWord::Op::birth) {
      o << "<path d=\"M " << detail::fmt(xb) << " " << detail::fmt(Y(e.strand))
        << " A 9 " << detail::fmt(0.5 * (Y(e.strand) - Y(e.strand + 1)))
        << " 0 0 1 " << detail::fmt(xb) << " "
        << detail::fmt(Y(e.strand + 1))
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
      detail::svg_event_glyph(o, xm, Y(e.strand + 0.5), cls.concave,
                              cls.plus);
    } else if (e.op == AnnulusWord::Op::death) {
      o << "<path d=\"M " << detail::fmt(xa) << " " << detail::fmt(Y(e.strand))
        << " A 9 " << detail::fmt(0.5 * (Y(e.strand) - Y(e.strand + 1)))
        << " 0 0 0 " << detail::fmt(xa) << " "
        << detail::fmt(Y(e.strand + 1))
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
      detail::svg_event_glyph(o, xm, Y(e.strand + 0.5), cls.concave,
                              cls.plus);
    } else {
      detail::svg_text(o, xm - 4, Y(e.strand + 1) - 8, "x", "#3050d0");
    }
  }
  // the closing column joins back to the start (cyclic word)
  for (int s = 0; s < w.start_strands; ++s)
    detail::svg_line(o, X(cols - 1.0), Y(s), X((double)cols), Y(s), "gray",
                     " stroke-dasharray=\"3,3\"");
  o << "</svg>\n";
  return o.str();
}

}  // namespace flatland
