#pragma once

// Deterministic SVG figures for planar construction traces.

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "pcm/construct.hpp"
#include "pcm/errors.hpp"
#include "pcm/polyhedra.hpp"

namespace pcm::io {

/// Axis-aligned window [xmin, xmax] x [ymin, ymax].
struct BBox {
  Rational xmin, ymin, xmax, ymax;
};

inline BBox parse_bbox(std::string_view text) {
  QVector v = parse_qvector(text);
  if (v.dim() != 4) throw InputError("--bbox expects xmin,ymin,xmax,ymax");
  if (!(v[0] < v[2]) || !(v[1] < v[3])) throw InputError("--bbox must have xmin < xmax and ymin < ymax");
  return {v[0], v[1], v[2], v[3]};
}

/// Counter-clockwise convex hull of planar points (Andrew's monotone chain, exact).
inline std::vector<QVector> convex_hull_2d(std::vector<QVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const QVector& o, const QVector& a, const QVector& b) {
    return Rational((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
  };
  std::vector<QVector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

namespace detail {

class SvgCanvas {
 public:
  explicit SvgCanvas(BBox box) : box_(std::move(box)) {}

  std::string fmt(double v) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
  }
  std::string px(const QVector& p) const {
    return fmt(kMargin + (p[0] - box_.xmin).convert_to<double>() * kScale);
  }
  std::string py(const QVector& p) const {
    return fmt(kMargin + (box_.ymax - p[1]).convert_to<double>() * kScale);
  }
  double width() const { return 2 * kMargin + (box_.xmax - box_.xmin).convert_to<double>() * kScale; }
  double height() const { return 2 * kMargin + (box_.ymax - box_.ymin).convert_to<double>() * kScale; }

  void line(const QVector& a, const QVector& b, const char* cls) {
    body_ += "  <line class=\"" + std::string(cls) + "\" x1=\"" + px(a) + "\" y1=\"" + py(a) + "\" x2=\"" + px(b) +
             "\" y2=\"" + py(b) + "\"/>\n";
  }
  void circle(const QVector& c, const char* cls, const std::string& indent = "  ") {
    body_ += indent + "<circle class=\"" + std::string(cls) + "\" cx=\"" + px(c) + "\" cy=\"" + py(c) +
             "\" r=\"3\"><title>" + to_string(c) + "</title></circle>\n";
  }
  void polygon(const std::vector<QVector>& pts, const char* cls, const std::string& indent = "  ") {
    std::string s;
    for (const auto& p : pts) s += (s.empty() ? "" : " ") + px(p) + "," + py(p);
    body_ += indent + "<polygon class=\"" + std::string(cls) + "\" points=\"" + s + "\"/>\n";
  }
  void raw(const std::string& s) { body_ += s; }

  std::string finish(const std::string& title) const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width()) + "\" height=\"" +
           fmt(height()) + "\" viewBox=\"0 0 " + fmt(width()) + " " + fmt(height()) + "\">\n";
    out += "  <title>" + title + "</title>\n";
    out += "  <style>.hull-edge{stroke:#333;stroke-width:1.5}.seed-point{fill:#000}"
           ".fiber polygon{fill:#4a90d9;fill-opacity:0.25;stroke:#4a90d9}.vertex{fill:#c0392b}"
           ".axis{stroke:#bbb;stroke-width:0.5}</style>\n";
    out += body_;
    out += "</svg>\n";
    return out;
  }

  const BBox& box() const { return box_; }

 private:
  static constexpr double kScale = 60.0;
  static constexpr double kMargin = 20.0;
  BBox box_;
  std::string body_;
};

inline BBox padded_box(const std::vector<QVector>& pts, const Rational& pad) {
  BBox b{pts.front()[0], pts.front()[1], pts.front()[0], pts.front()[1]};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p[0]);
    b.xmax = std::max(b.xmax, p[0]);
    b.ymin = std::min(b.ymin, p[1]);
    b.ymax = std::max(b.ymax, p[1]);
  }
  b.xmin -= pad;
  b.ymin -= pad;
  b.xmax += pad;
  b.ymax += pad;
  return b;
}

inline void axes(SvgCanvas& c) {
  const BBox& b = c.box();
  if (b.ymin <= 0 && 0 <= b.ymax) c.line(QVector{b.xmin, Rational(0)}, QVector{b.xmax, Rational(0)}, "axis");
  if (b.xmin <= 0 && 0 <= b.xmax) c.line(QVector{Rational(0), b.ymin}, QVector{Rational(0), b.ymax}, "axis");
}

inline void require_planar(const ConstructionTrace& t) {
  if (t.final_F.dim() != 2) throw InputError("render needs a 2-dimensional trace, got dimension " + std::to_string(t.final_F.dim()));
}

}  // namespace detail

/// Seed points and the edges of their convex hull.
inline std::string render_domain(const ConstructionTrace& t, std::optional<BBox> box = std::nullopt) {
  detail::require_planar(t);
  const auto dom = t.seed.domain();
  detail::SvgCanvas c(box ? *box : detail::padded_box(dom, Rational(1)));
  detail::axes(c);
  const auto hull = convex_hull_2d(dom);
  if (hull.size() == 2) {
    c.line(hull[0], hull[1], "hull-edge");
  } else if (hull.size() > 2) {
    for (std::size_t i = 0; i < hull.size(); ++i) c.line(hull[i], hull[(i + 1) % hull.size()], "hull-edge");
  }
  for (const auto& x : dom) c.circle(x, "seed-point");
  return c.finish("domain");
}

/// One group per construction step: the fiber at x_k clipped to the window, and
/// the points of E_k.
inline std::string render_range(const ConstructionTrace& t, std::optional<BBox> box = std::nullopt) {
  detail::require_planar(t);
  std::vector<QVector> all;
  for (const auto& s : t.steps) all.insert(all.end(), s.Ek.begin(), s.Ek.end());
  detail::SvgCanvas c(box ? *box : detail::padded_box(all, Rational(2)));
  detail::axes(c);
  const BBox& b = c.box();
  const std::vector<LinearInequality> clip{
      {QVector{Rational(1), Rational(0)}, b.xmin, Relation::ge},
      {QVector{Rational(-1), Rational(0)}, -b.xmax, Relation::ge},
      {QVector{Rational(0), Rational(1)}, b.ymin, Relation::ge},
      {QVector{Rational(0), Rational(-1)}, -b.ymax, Relation::ge},
  };
  for (const auto& s : t.steps) {
    c.raw("  <g class=\"fiber\" data-k=\"" + std::to_string(s.k) + "\" data-x=\"" + to_string(s.xk) + "\">\n");
    const auto clipped = vertices_and_rays(s.fiber_h.with(clip));
    const auto poly = convex_hull_2d(clipped.vertices);
    if (poly.size() >= 2) c.polygon(poly, "region", "    ");
    for (const auto& v : s.Ek) c.circle(v, "vertex", "    ");
    c.raw("  </g>\n");
  }
  return c.finish("range");
}

}  // namespace pcm::io
