#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mcd/curve.hpp"
#include "mcd/error.hpp"
#include "mcd/geom.hpp"

namespace mcd {

/// Axis-aligned bounding frame standing in for the unbounded plane.
struct Frame {
  Rational xmin, xmax, ymin, ymax;

  bool strictly_contains(const Point& p) const {
    return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
  }
};

/// The extents of every vertex (and extra point) scaled by 3 about their center.
inline Frame frame_for(const CurveFamily& f, std::span<const Point> extra = {}) {
  std::vector<Point> all(extra.begin(), extra.end());
  for (const auto& c : f.curves) all.insert(all.end(), c.vertices().begin(), c.vertices().end());
  if (all.empty()) return Frame{Rational(-1), Rational(1), Rational(-1), Rational(1)};
  Box b = polyline_box(all);
  Rational w = b.xmax - b.xmin, h = b.ymax - b.ymin;
  if (w == 0) w = 1;
  if (h == 0) h = 1;
  Rational cx = (b.xmin + b.xmax) / 2, cy = (b.ymin + b.ymax) / 2;
  return Frame{cx - w * 3 / 2, cx + w * 3 / 2, cy - h * 3 / 2, cy + h * 3 / 2};
}

/// Top or bottom side of a cell: a sample curve piece or a frame edge, as an
/// x-increasing polyline running from x_left to x_right.
struct Boundary {
  std::optional<std::size_t> curve;
  Polyline pts;

  Rational at(const Rational& x) const { return eval_monotone(pts, x); }
};

struct Trapezoid {
  Rational x_left, x_right;
  Boundary bottom, top;
  std::vector<std::size_t> defining_set;
  bool bounded = true;

  /// Open-interior membership.
  bool contains(const Point& p) const {
    if (p.x <= x_left || p.x >= x_right) return false;
    return p.y > bottom.at(p.x) && p.y < top.at(p.x);
  }

  /// Counter-clockwise boundary ring (bottom left to right, then top back).
  Polyline polygon() const {
    Polyline ring = bottom.pts;
    if (top.pts.back() != ring.back()) ring.push_back(top.pts.back());
    for (std::size_t i = top.pts.size() - 1; i-- > 0;) ring.push_back(top.pts[i]);
    if (ring.back() == ring.front()) ring.pop_back();
    return ring;
  }

  Box box() const {
    Box b = polyline_box(bottom.pts);
    Box t = polyline_box(top.pts);
    b.ymax = t.ymax;
    return b;
  }
};

/// Vertical decomposition of a sample of curves inside a frame, kept in slab
/// form for point location. Curve indices refer to the family it was built from.
struct TrapezoidalMap {
  struct Branch {
    std::size_t curve;
    Polyline pts;
  };
  struct Cut {
    Rational y;
    bool event;
  };

  Frame frame;
  std::vector<std::size_t> sample;
  std::vector<Trapezoid> cells;
  std::vector<std::vector<std::size_t>> conflicts;

  std::vector<Branch> branches;
  std::vector<Rational> bounds;
  std::vector<std::vector<std::size_t>> slab_branches;
  std::vector<std::vector<std::size_t>> slab_cells;
  std::vector<std::vector<Cut>> cuts;  // per interior bound, sorted by y
  std::vector<std::vector<std::size_t>> cut_left_cell;

  std::size_t size() const { return cells.size(); }
};

namespace detail {

struct EventPoint {
  Point p;
  std::vector<std::size_t> curves;
};

inline Polyline clip_polyline(std::span<const Point> pts, const Rational& x0, const Rational& x1) {
  Polyline out{Point{x0, eval_monotone(pts, x0)}};
  for (const auto& v : pts)
    if (v.x > x0 && v.x < x1) out.push_back(v);
  out.push_back(Point{x1, eval_monotone(pts, x1)});
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Builds the vertical decomposition of the curves `sample` of `family`:
/// walls through every endpoint, x-reversal vertex and pairwise intersection,
/// each extended up and down to the next sample curve or the frame.
inline TrapezoidalMap vertical_decomposition(const CurveFamily& family, std::vector<std::size_t> sample,
                                             const Frame& frame) {
  std::sort(sample.begin(), sample.end());
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  TrapezoidalMap m;
  m.frame = frame;
  m.sample = sample;

  CurveFamily sub = family.subfamily(sample);
  ValidationReport rep = validate_family(sub);
  if (!rep.ok()) {
    const auto& w = rep.simple ? *rep.general_position_witness : *rep.simple_witness;
    throw Error(ErrorCode::ValidationError, "sample not simple/general position: " + w.reason);
  }

  std::vector<detail::EventPoint> events;
  for (std::size_t i : sample) {
    for (const auto& v : family[i].vertices())
      if (!frame.strictly_contains(v)) throw Error(ErrorCode::ValidationError, "curve leaves the frame");
    for (auto& p : family[i].critical_points()) events.push_back({p, {i}});
    for (auto& piece : family[i].monotone_pieces()) m.branches.push_back({i, std::move(piece)});
  }
  for (std::size_t a = 0; a < sample.size(); ++a)
    for (std::size_t b = a + 1; b < sample.size(); ++b)
      for (auto& c : intersect_pair(family[sample[a]], family[sample[b]]))
        events.push_back({c.p, {sample[a], sample[b]}});
  std::sort(events.begin(), events.end(), [](const auto& u, const auto& v) { return lex_less(u.p, v.p); });

  m.bounds.push_back(frame.xmin);
  for (const auto& e : events)
    if (e.p.x != m.bounds.back()) m.bounds.push_back(e.p.x);
  m.bounds.push_back(frame.xmax);
  const std::size_t slabs = m.bounds.size() - 1;

  // Branches spanning each slab, bottom to top, and their gap numbering.
  std::vector<std::size_t> gap_base(slabs + 1, 0);
  m.slab_branches.resize(slabs);
  for (std::size_t s = 0; s < slabs; ++s) {
    const Rational& lo = m.bounds[s];
    const Rational& hi = m.bounds[s + 1];
    Rational mid = (lo + hi) / 2;
    std::vector<std::pair<Rational, std::size_t>> keyed;
    for (std::size_t b = 0; b < m.branches.size(); ++b) {
      const auto& pts = m.branches[b].pts;
      if (pts.front().x <= lo && pts.back().x >= hi) keyed.emplace_back(eval_monotone(pts, mid), b);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    for (auto& [y, b] : keyed) m.slab_branches[s].push_back(b);
    gap_base[s + 1] = gap_base[s] + keyed.size() + 1;
  }

  detail::UnionFind uf(gap_base[slabs]);
  m.cuts.resize(slabs > 0 ? slabs - 1 : 0);
  std::size_t e_idx = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> merges(m.cuts.size());
  for (std::size_t k = 0; k + 1 < slabs; ++k) {
    const Rational& X = m.bounds[k + 1];
    auto values = [&](std::size_t s) {
      std::vector<Rational> ys;
      for (auto b : m.slab_branches[s]) ys.push_back(eval_monotone(m.branches[b].pts, X));
      return ys;
    };
    std::vector<Rational> left = values(k), right = values(k + 1);
    std::vector<TrapezoidalMap::Cut> cut;
    for (const auto& y : left) cut.push_back({y, false});
    for (const auto& y : right) cut.push_back({y, false});
    while (e_idx < events.size() && events[e_idx].p.x < X) ++e_idx;
    for (std::size_t e = e_idx; e < events.size() && events[e].p.x == X; ++e) cut.push_back({events[e].p.y, true});
    std::sort(cut.begin(), cut.end(), [](const auto& u, const auto& v) { return u.y < v.y || (u.y == v.y && u.event > v.event); });
    std::vector<TrapezoidalMap::Cut> merged;
    for (auto& c : cut) {
      if (!merged.empty() && merged.back().y == c.y) continue;
      merged.push_back(std::move(c));
    }
    for (std::size_t i = 0; i <= merged.size(); ++i) {
      bool walled = (i > 0 && merged[i - 1].event) || (i < merged.size() && merged[i].event);
      if (walled) continue;
      const Rational& lo = i == 0 ? frame.ymin : merged[i - 1].y;
      std::size_t lg = std::upper_bound(left.begin(), left.end(), lo) - left.begin();
      std::size_t rg = std::upper_bound(right.begin(), right.end(), lo) - right.begin();
      if (i == 0) lg = rg = 0;
      uf.unite(gap_base[k] + lg, gap_base[k + 1] + rg);
      merges[k].emplace_back(i, lg);
    }
    m.cuts[k] = std::move(merged);
  }

  // Canonical cell numbering: first slab, then bottom to top.
  std::map<std::size_t, std::size_t> root_cell;
  struct Span {
    std::size_t first, last, gap_first, gap_last;
  };
  std::vector<Span> spans;
  m.slab_cells.resize(slabs);
  for (std::size_t s = 0; s < slabs; ++s) {
    std::size_t gaps = m.slab_branches[s].size() + 1;
    for (std::size_t g = 0; g < gaps; ++g) {
      std::size_t root = uf.find(gap_base[s] + g);
      auto [it, fresh] = root_cell.emplace(root, spans.size());
      if (fresh) spans.push_back({s, s, g, g});
      spans[it->second].last = s;
      spans[it->second].gap_last = g;
      m.slab_cells[s].push_back(it->second);
    }
  }
  m.cut_left_cell.resize(m.cuts.size());
  for (std::size_t k = 0; k < m.cuts.size(); ++k) {
    m.cut_left_cell[k].assign(m.cuts[k].size() + 1, SIZE_MAX);
    for (auto [interval, lg] : merges[k]) m.cut_left_cell[k][interval] = m.slab_cells[k][lg];
  }

  auto side = [&](std::size_t s, std::size_t g, bool top, const Rational& x0, const Rational& x1) {
    Boundary bd;
    const auto& sb = m.slab_branches[s];
    if (top ? g == sb.size() : g == 0) {
      Rational y = top ? frame.ymax : frame.ymin;
      bd.pts = {Point{x0, y}, Point{x1, y}};
      return bd;
    }
    const auto& br = m.branches[sb[top ? g : g - 1]];
    bd.curve = br.curve;
    bd.pts = detail::clip_polyline(br.pts, x0, x1);
    return bd;
  };

  for (const auto& sp : spans) {
    Trapezoid t;
    t.x_left = m.bounds[sp.first];
    t.x_right = m.bounds[sp.last + 1];
    t.bottom = side(sp.first, sp.gap_first, false, t.x_left, t.x_right);
    t.top = side(sp.first, sp.gap_first, true, t.x_left, t.x_right);
    std::vector<std::size_t> d;
    if (t.bottom.curve) d.push_back(*t.bottom.curve);
    if (t.top.curve) d.push_back(*t.top.curve);
    for (const Rational* X : {&t.x_left, &t.x_right}) {
      Rational lo = t.bottom.at(*X), hi = t.top.at(*X);
      for (const auto& e : events)
        if (e.p.x == *X && e.p.y >= lo && e.p.y <= hi) d.insert(d.end(), e.curves.begin(), e.curves.end());
    }
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    t.defining_set = std::move(d);
    t.bounded = t.bottom.curve && t.top.curve && t.x_left != frame.xmin && t.x_right != frame.xmax;
    m.cells.push_back(std::move(t));
  }
  m.conflicts.assign(m.cells.size(), {});
  return m;
}

inline TrapezoidalMap vertical_decomposition(const CurveFamily& s) {
  return vertical_decomposition(s, s.all_indices(), frame_for(s));
}

/// Cell whose open interior contains p. Throws OnBoundary when p lies on a
/// sample curve, a wall or the frame.
inline std::size_t locate_point(const TrapezoidalMap& m, const Point& p) {
  if (!m.frame.strictly_contains(p)) throw Error(ErrorCode::OnBoundary, "point outside the open frame");
  auto it = std::upper_bound(m.bounds.begin(), m.bounds.end(), p.x);
  std::size_t s = static_cast<std::size_t>(it - m.bounds.begin()) - 1;
  if (p.x == m.bounds[s]) {
    const auto& cut = m.cuts[s - 1];
    std::size_t i = 0;
    while (i < cut.size() && cut[i].y < p.y) ++i;
    if (i < cut.size() && cut[i].y == p.y) throw Error(ErrorCode::OnBoundary, "point on a curve");
    std::size_t cell = m.cut_left_cell[s - 1][i];
    if (cell == SIZE_MAX) throw Error(ErrorCode::OnBoundary, "point on a wall");
    return cell;
  }
  std::size_t g = 0;
  for (auto b : m.slab_branches[s]) {
    Rational y = eval_monotone(m.branches[b].pts, p.x);
    if (y == p.y) throw Error(ErrorCode::OnBoundary, "point on a curve");
    if (y < p.y) ++g;
  }
  return m.slab_cells[s][g];
}

/// A point where segment [a,b] (non-vertical) enters the open interior of t.
inline std::optional<Point> segment_meets_open_cell(const Point& a, const Point& b, const Trapezoid& t) {
  const Point& l = a.x < b.x ? a : b;
  const Point& r = a.x < b.x ? b : a;
  Rational xa = l.x > t.x_left ? l.x : t.x_left;
  Rational xb = r.x < t.x_right ? r.x : t.x_right;
  if (xa >= xb) return std::nullopt;
  std::vector<Rational> xs{xa};
  for (const auto* bd : {&t.bottom.pts, &t.top.pts})
    for (const auto& v : *bd)
      if (v.x > xa && v.x < xb) xs.push_back(v.x);
  xs.push_back(xb);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto seg_at = [&](const Rational& x) { return line_y_at(l, r, x); };
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rational &u = xs[i], &v = xs[i + 1];
    Rational lo = u, hi = v;
    // Restrict (lo, hi) to where the linear function h is positive.
    auto restrict = [&](const Rational& hu, const Rational& hv) {
      if (hu > 0 && hv > 0) return;
      if (hu <= 0 && hv <= 0) {
        hi = lo;
        return;
      }
      Rational root = u + (v - u) * hu / (hu - hv);
      if (hu > 0) hi = std::min(hi, root);
      else lo = std::max(lo, root);
    };
    Rational su = seg_at(u), sv = seg_at(v);
    restrict(su - t.bottom.at(u), sv - t.bottom.at(v));
    restrict(t.top.at(u) - su, t.top.at(v) - sv);
    if (lo < hi) {
      Rational x = (lo + hi) / 2;
      return Point{x, seg_at(x)};
    }
  }
  return std::nullopt;
}

inline std::optional<Point> curve_meets_open_cell(std::span<const Point> pts, const Trapezoid& t) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (auto w = segment_meets_open_cell(pts[i], pts[i + 1], t)) return w;
  return std::nullopt;
}

/// Fills m.conflicts[c] with the members of `ambient` (indices into family)
/// that meet the open interior of cell c.
inline TrapezoidalMap conflict_lists(TrapezoidalMap m, const CurveFamily& family, std::span<const std::size_t> ambient) {
  m.conflicts.assign(m.cells.size(), {});
  std::vector<Box> boxes;
  for (const auto& c : m.cells) boxes.push_back(c.box());
  for (std::size_t i : ambient) {
    const auto& curve = family[i];
    for (std::size_t c = 0; c < m.cells.size(); ++c) {
      if (!boxes[c].overlaps(curve.box())) continue;
      if (curve_meets_open_cell(curve.points(), m.cells[c])) m.conflicts[c].push_back(i);
    }
  }
  return m;
}

inline TrapezoidalMap conflict_lists(TrapezoidalMap m, const CurveFamily& ambient) {
  auto all = ambient.all_indices();
  return conflict_lists(std::move(m), ambient, all);
}

}  // namespace mcd
