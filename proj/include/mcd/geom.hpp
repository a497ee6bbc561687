#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mcd/error.hpp"
#include "mcd/rational.hpp"

namespace mcd {

struct Point {
  Rational x;
  Rational y;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }

/// Lexicographic (x, then y).
inline bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

struct LexLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

using Polyline = std::vector<Point>;

inline Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// +1 left turn, -1 right turn, 0 collinear.
inline int orient(const Point& o, const Point& a, const Point& b) { return sign(cross(o, a, b)); }

struct Box {
  Rational xmin, xmax, ymin, ymax;

  bool overlaps(const Box& o) const {
    return !(o.xmin > xmax || o.xmax < xmin || o.ymin > ymax || o.ymax < ymin);
  }
  bool contains(const Point& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

inline Box segment_box(const Point& a, const Point& b) {
  Box box;
  box.xmin = a.x < b.x ? a.x : b.x;
  box.xmax = a.x < b.x ? b.x : a.x;
  box.ymin = a.y < b.y ? a.y : b.y;
  box.ymax = a.y < b.y ? b.y : a.y;
  return box;
}

inline Box polyline_box(std::span<const Point> pts) {
  Box box{pts.front().x, pts.front().x, pts.front().y, pts.front().y};
  for (const auto& p : pts) {
    if (p.x < box.xmin) box.xmin = p.x;
    if (p.x > box.xmax) box.xmax = p.x;
    if (p.y < box.ymin) box.ymin = p.y;
    if (p.y > box.ymax) box.ymax = p.y;
  }
  return box;
}

/// Closed segment membership.
inline bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return segment_box(a, b).contains(p);
}

enum class SegmentRelation { Disjoint, Point, Overlap };

struct SegmentMeet {
  SegmentRelation kind = SegmentRelation::Disjoint;
  Point p;
};

/// Exact intersection of closed segments [a,b] and [c,d].
inline SegmentMeet meet_segments(const Point& a, const Point& b, const Point& c, const Point& d) {
  SegmentMeet out;
  if (!segment_box(a, b).overlaps(segment_box(c, d))) return out;
  Rational d1 = cross(c, d, a);
  Rational d2 = cross(c, d, b);
  Rational d3 = cross(a, b, c);
  Rational d4 = cross(a, b, d);
  int s1 = sign(d1), s2 = sign(d2), s3 = sign(d3), s4 = sign(d4);
  if (s1 == 0 && s2 == 0) {
    // Collinear: compare projections on the dominant axis.
    bool use_x = a.x != b.x || c.x != d.x;
    auto key = [&](const Point& p) -> const Rational& { return use_x ? p.x : p.y; };
    const Point* lo1 = &a; const Point* hi1 = &b;
    if (key(b) < key(a)) std::swap(lo1, hi1);
    const Point* lo2 = &c; const Point* hi2 = &d;
    if (key(d) < key(c)) std::swap(lo2, hi2);
    const Point& lo = key(*lo1) < key(*lo2) ? *lo2 : *lo1;
    const Point& hi = key(*hi1) < key(*hi2) ? *hi1 : *hi2;
    if (key(hi) < key(lo)) return out;
    if (key(hi) == key(lo)) {
      out.kind = SegmentRelation::Point;
      out.p = lo;
      return out;
    }
    out.kind = SegmentRelation::Overlap;
    out.p = lo;
    return out;
  }
  if (s1 * s2 > 0 || s3 * s4 > 0) return out;
  out.kind = SegmentRelation::Point;
  if (s1 == 0) out.p = a;
  else if (s2 == 0) out.p = b;
  else if (s3 == 0) out.p = c;
  else if (s4 == 0) out.p = d;
  else {
    Rational s = d1 / (d1 - d2);
    out.p = Point{a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
  }
  return out;
}

/// y of the (non-vertical) line through a,b at abscissa x.
inline Rational line_y_at(const Point& a, const Point& b, const Rational& x) {
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

/// Evaluates an x-increasing polyline at x (x must lie in its closed x-range).
inline Rational eval_monotone(std::span<const Point> pts, const Rational& x) {
  std::size_t lo = 0, hi = pts.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (pts[mid].x <= x) lo = mid;
    else hi = mid;
  }
  if (x == pts[lo].x) return pts[lo].y;
  if (x == pts[hi].x) return pts[hi].y;
  return line_y_at(pts[lo], pts[hi], x);
}

enum class ContactKind {
  Crossing,  // both curves pass through, transversally
  Touching,  // both pass through without crossing (tangency)
  Endpoint,  // the point is an endpoint of at least one curve
};

struct Contact {
  Point p;
  ContactKind kind;
};

namespace detail {

inline int half_plane(const Point& v) {
  return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
}

inline bool angle_less(const Point& u, const Point& v) {
  int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return sign(u.x * v.y - u.y * v.x) > 0;
}

inline bool same_direction(const Point& u, const Point& v) {
  return half_plane(u) == half_plane(v) && sign(u.x * v.y - u.y * v.x) == 0;
}

/// Directions leaving p along the polyline. Empty optional if p is an endpoint.
inline std::optional<std::array<Point, 2>> arms_at(std::span<const Point> pts, const Point& p) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == p) {
      if (i == 0 || i + 1 == pts.size()) return std::nullopt;
      return std::array<Point, 2>{Point{pts[i - 1].x - p.x, pts[i - 1].y - p.y},
                                  Point{pts[i + 1].x - p.x, pts[i + 1].y - p.y}};
    }
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (on_segment(p, pts[i], pts[i + 1])) {
      return std::array<Point, 2>{Point{pts[i].x - p.x, pts[i].y - p.y},
                                  Point{pts[i + 1].x - p.x, pts[i + 1].y - p.y}};
    }
  }
  return std::nullopt;
}

inline ContactKind classify_contact(std::span<const Point> a, std::span<const Point> b, const Point& p) {
  auto arms_a = arms_at(a, p);
  auto arms_b = arms_at(b, p);
  if (!arms_a || !arms_b) return ContactKind::Endpoint;
  struct Ray {
    Point dir;
    int owner;
  };
  std::array<Ray, 4> rays{Ray{(*arms_a)[0], 0}, Ray{(*arms_a)[1], 0}, Ray{(*arms_b)[0], 1}, Ray{(*arms_b)[1], 1}};
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      if (same_direction(rays[i].dir, rays[j].dir))
        throw Error(ErrorCode::DegenerateOverlap, "curves overlap along a sub-segment");
  std::sort(rays.begin(), rays.end(), [](const Ray& u, const Ray& v) { return angle_less(u.dir, v.dir); });
  bool alternating = rays[0].owner != rays[1].owner && rays[1].owner != rays[2].owner &&
                     rays[2].owner != rays[3].owner;
  return alternating ? ContactKind::Crossing : ContactKind::Touching;
}

}  // namespace detail

/// All common points of two polylines, sorted by (x, y), each classified.
/// Throws DegenerateOverlap when the polylines share a sub-segment.
inline std::vector<Contact> polyline_contacts(std::span<const Point> a, std::span<const Point> b) {
  std::vector<Point> pts;
  if (!polyline_box(a).overlaps(polyline_box(b))) return {};
  std::vector<Box> boxes_b;
  boxes_b.reserve(b.size());
  for (std::size_t j = 0; j + 1 < b.size(); ++j) boxes_b.push_back(segment_box(b[j], b[j + 1]));
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    Box box_a = segment_box(a[i], a[i + 1]);
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      if (!box_a.overlaps(boxes_b[j])) continue;
      SegmentMeet m = meet_segments(a[i], a[i + 1], b[j], b[j + 1]);
      if (m.kind == SegmentRelation::Overlap)
        throw Error(ErrorCode::DegenerateOverlap, "curves overlap along a sub-segment");
      if (m.kind == SegmentRelation::Point) pts.push_back(m.p);
    }
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Contact> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    ContactKind kind = detail::classify_contact(a, b, p);
    out.push_back(Contact{std::move(p), kind});
  }
  return out;
}

/// True iff the two polylines share at least one point (overlaps included).
inline bool polylines_meet(std::span<const Point> a, std::span<const Point> b) {
  if (!polyline_box(a).overlaps(polyline_box(b))) return false;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    Box box_a = segment_box(a[i], a[i + 1]);
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      if (!box_a.overlaps(segment_box(b[j], b[j + 1]))) continue;
      if (meet_segments(a[i], a[i + 1], b[j], b[j + 1]).kind != SegmentRelation::Disjoint) return true;
    }
  }
  return false;
}

/// Polyline is non-self-intersecting: non-adjacent segments are disjoint and
/// adjacent ones share only their common vertex.
inline bool is_simple_polyline(std::span<const Point> pts) {
  std::size_t m = pts.size();
  if (m < 2) return false;
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (pts[i] == pts[i + 1]) return false;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j + 1 < m; ++j) {
      SegmentMeet meet = meet_segments(pts[i], pts[i + 1], pts[j], pts[j + 1]);
      if (meet.kind == SegmentRelation::Disjoint) continue;
      if (meet.kind == SegmentRelation::Overlap) return false;
      if (j == i + 1 && meet.p == pts[j]) continue;
      return false;
    }
  }
  return true;
}

/// Point at parameter s of segment [a,b].
inline Point lerp(const Point& a, const Point& b, const Rational& s) {
  return Point{a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
}

inline Point midpoint(const Point& a, const Point& b) {
  return Point{(a.x + b.x) / 2, (a.y + b.y) / 2};
}

/// Exact even-odd point-in-polygon test; p must not lie on the boundary.
inline bool point_in_ring(std::span<const Point> ring, const Point& p) {
  bool inside = false;
  std::size_t m = ring.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Point& a = ring[i];
    const Point& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      Rational x = a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

inline bool on_ring(std::span<const Point> ring, const Point& p) {
  std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i)
    if (on_segment(p, ring[i], ring[(i + 1) % m])) return true;
  return false;
}

}  // namespace mcd
