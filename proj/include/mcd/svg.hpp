#pragma once

#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcd/curve.hpp"
#include "mcd/graph.hpp"
#include "mcd/sampler.hpp"
#include "mcd/structure.hpp"
#include "mcd/trapezoidal.hpp"
#include "mcd/two_color.hpp"

namespace mcd::svg {

/// Minimal SVG writer over a fixed world box; y points up in world space.
class Canvas {
 public:
  explicit Canvas(Box world, double size = 800) : world_(world), size_(size) {
    Rational w = world_.xmax - world_.xmin, h = world_.ymax - world_.ymin;
    if (w == 0) w = 1;
    if (h == 0) h = 1;
    scale_ = size_ / std::max(to_double(w), to_double(h));
  }

  void polyline(std::span<const Point> pts, const std::string& stroke, double width, bool closed = false,
                const std::string& fill = "none") {
    body_ << "<" << (closed ? "polygon" : "polyline") << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << x(pts[i]) << "," << y(pts[i]);
    body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }

  void dot(const Point& p, const std::string& color, double r = 3) {
    body_ << "<circle cx=\"" << x(p) << "\" cy=\"" << y(p) << "\" r=\"" << num(r) << "\" fill=\"" << color << "\"/>\n";
  }

  std::string str() const {
    Rational w = world_.xmax - world_.xmin, h = world_.ymax - world_.ymin;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(to_double(w) * scale_ + 20) << "\" height=\""
        << num(to_double(h) * scale_ + 20) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }
  std::string x(const Point& p) const { return num(10 + to_double(p.x - world_.xmin) * scale_); }
  std::string y(const Point& p) const { return num(10 + to_double(world_.ymax - p.y) * scale_); }

  Box world_;
  double size_;
  double scale_ = 1;
  std::ostringstream body_;
};

inline Box family_box(const CurveFamily& f, std::span<const Point> extra = {}) {
  std::vector<Point> all(extra.begin(), extra.end());
  for (const auto& c : f.curves) all.insert(all.end(), c.vertices().begin(), c.vertices().end());
  if (all.empty()) all.push_back({Rational(0), Rational(0)});
  return polyline_box(all);
}

inline std::string family(const CurveFamily& f, std::span<const Point> points = {}) {
  Canvas c(family_box(f, points));
  for (const auto& cv : f.curves) c.polyline(cv.points(), "#333", 1);
  for (const auto& p : points) c.dot(p, "#c00", 2);
  return c.str();
}

/// Cells as closed outlines (conflicting cells shaded by conflict count),
/// sample curves bold.
inline std::string decomposition(const TrapezoidalMap& m, const CurveFamily& f) {
  Frame fr = m.frame;
  Canvas c(Box{fr.xmin, fr.xmax, fr.ymin, fr.ymax});
  std::size_t most = 1;
  for (const auto& cl : m.conflicts) most = std::max(most, cl.size());
  for (std::size_t k = 0; k < m.cells.size(); ++k) {
    std::string fill = "none";
    if (k < m.conflicts.size() && !m.conflicts[k].empty()) {
      int shade = 255 - static_cast<int>(160 * m.conflicts[k].size() / most);
      char buf[16];
      std::snprintf(buf, sizeof buf, "#ff%02x%02x", shade, shade);
      fill = buf;
    }
    c.polyline(m.cells[k].polygon(), "#888", 0.5, true, fill);
  }
  std::set<std::size_t> sample(m.sample.begin(), m.sample.end());
  for (std::size_t i = 0; i < f.size(); ++i) c.polyline(f[i].points(), sample.count(i) ? "#000" : "#aaa", sample.count(i) ? 2.5 : 0.8);
  return c.str();
}

inline std::string good_trapezoid(const GoodTrapezoidResult& r, const CurveFamily& f, std::span<const Point> points) {
  Canvas c(family_box(f, points));
  c.polyline(r.cell.polygon(), "#06c", 2, true, "#def");
  std::set<std::size_t> kept(r.surviving_curves.begin(), r.surviving_curves.end());
  for (std::size_t i = 0; i < f.size(); ++i) c.polyline(f[i].points(), kept.count(i) ? "#333" : "#ccc", 1);
  std::set<std::size_t> caught(r.captured_points.begin(), r.captured_points.end());
  for (std::size_t i = 0; i < points.size(); ++i) c.dot(points[i], caught.count(i) ? "#c00" : "#999", 2);
  return c.str();
}

inline std::string quadruple(const RegionQuadruple& q, const CurveFamily& blue, const CurveFamily& red,
                             const TwoColorCertificate* cert = nullptr) {
  std::vector<Point> all;
  for (const auto& cv : red.curves) all.insert(all.end(), cv.vertices().begin(), cv.vertices().end());
  Canvas c(family_box(blue, all));
  for (const auto* t : {&q.delta_bl, &q.delta_br}) c.polyline(t->polygon(), "#06c", 2, true, "#e6f0ff");
  for (const auto* t : {&q.delta_3, &q.delta_4}) c.polyline(t->polygon(), "#c60", 1, true);
  std::set<std::size_t> bout, rout;
  if (cert) {
    bout.insert(cert->blue_out.begin(), cert->blue_out.end());
    rout.insert(cert->red_out.begin(), cert->red_out.end());
  }
  for (std::size_t i = 0; i < blue.size(); ++i) c.polyline(blue[i].points(), "#36f", bout.count(i) ? 2 : 0.6);
  for (std::size_t i = 0; i < red.size(); ++i) c.polyline(red[i].points(), "#e33", rout.count(i) ? 2 : 0.6);
  if (cert && cert->alpha_prime) c.polyline(cert->alpha_prime->pts, "#0a0", 3.5);
  return c.str();
}

inline std::string bicolored(const CurveFamily& blue, const CurveFamily& red, const TwoColorCertificate* cert = nullptr) {
  std::vector<Point> all;
  for (const auto& cv : red.curves) all.insert(all.end(), cv.vertices().begin(), cv.vertices().end());
  Canvas c(family_box(blue, all));
  std::set<std::size_t> bout, rout;
  if (cert) {
    bout.insert(cert->blue_out.begin(), cert->blue_out.end());
    rout.insert(cert->red_out.begin(), cert->red_out.end());
  }
  for (std::size_t i = 0; i < blue.size(); ++i) c.polyline(blue[i].points(), "#36f", bout.count(i) ? 2 : 0.8);
  for (std::size_t i = 0; i < red.size(); ++i) c.polyline(red[i].points(), "#e33", rout.count(i) ? 2 : 0.8);
  return c.str();
}

inline std::string graph(const TopoGraph& g, const std::vector<std::size_t>& highlight = {}) {
  std::vector<Point> all;
  for (const auto& v : g.vertices) all.push_back(v.p);
  for (const auto& e : g.edges) all.insert(all.end(), e.pts.begin(), e.pts.end());
  if (all.empty()) all.push_back({Rational(0), Rational(0)});
  Canvas c(polyline_box(all));
  std::set<std::size_t> hi(highlight.begin(), highlight.end());
  for (std::size_t e = 0; e < g.edges.size(); ++e) c.polyline(g.edges[e].pts, hi.count(e) ? "#c00" : "#555", hi.count(e) ? 2.5 : 1);
  for (const auto& v : g.vertices) c.dot(v.p, "#000", 3);
  return c.str();
}

}  // namespace mcd::svg
