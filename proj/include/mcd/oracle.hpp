#pragma once

// Brute-force reference implementations used to check the algorithms. Only
// the Point type is shared with the library; every predicate here is
// re-derived from parametric line equations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mcd/error.hpp"
#include "mcd/geom.hpp"
#include "mcd/graph.hpp"

namespace mcd::oracle {

struct SegHit {
  bool overlap = false;
  std::optional<Point> p;
};

/// Solves a + s(b-a) = c + u(d-c) for s, u in [0,1].
inline SegHit segment_hit(const Point& a, const Point& b, const Point& c, const Point& d) {
  SegHit out;
  Rational rx = b.x - a.x, ry = b.y - a.y, qx = d.x - c.x, qy = d.y - c.y;
  Rational den = rx * qy - ry * qx;
  Rational wx = c.x - a.x, wy = c.y - a.y;
  if (den == 0) {
    if (wx * ry - wy * rx != 0) return out;  // parallel, distinct lines
    // Collinear: project on r (or on q if a == b).
    Rational rr = rx * rx + ry * ry;
    Rational t0 = (wx * rx + wy * ry) / rr;
    Rational t1 = ((d.x - a.x) * rx + (d.y - a.y) * ry) / rr;
    if (t0 > t1) std::swap(t0, t1);
    Rational lo = std::max(t0, Rational(0)), hi = std::min(t1, Rational(1));
    if (lo > hi) return out;
    if (lo == hi) out.p = Point{a.x + rx * lo, a.y + ry * lo};
    else out.overlap = true;
    return out;
  }
  Rational s = (wx * qy - wy * qx) / den;
  Rational u = (wx * ry - wy * rx) / den;
  if (s < 0 || s > 1 || u < 0 || u > 1) return out;
  out.p = Point{a.x + rx * s, a.y + ry * s};
  return out;
}

/// True iff two polylines share at least one point.
inline bool polylines_touch(std::span<const Point> a, std::span<const Point> b) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      SegHit h = segment_hit(a[i], a[i + 1], b[j], b[j + 1]);
      if (h.overlap || h.p) return true;
    }
  return false;
}

/// Number of distinct common points of two polylines (overlaps count as -1).
inline int common_point_count(std::span<const Point> a, std::span<const Point> b) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      SegHit h = segment_hit(a[i], a[i + 1], b[j], b[j + 1]);
      if (h.overlap) return -1;
      if (h.p && std::find(pts.begin(), pts.end(), *h.p) == pts.end()) pts.push_back(*h.p);
    }
  return static_cast<int>(pts.size());
}

/// Ray-crossing parity with the boundary test done separately.
inline bool strictly_inside_ring(std::span<const Point> ring, const Point& p) {
  std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i) {
    SegHit h = segment_hit(ring[i], ring[(i + 1) % m], p, p);
    if (h.p || h.overlap) return false;
  }
  int crossings = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % m];
    bool a_above = a.y > p.y, b_above = b.y > p.y;
    if (a_above == b_above) continue;
    Rational x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
    if (x > p.x) ++crossings;
  }
  return crossings % 2 == 1;
}

/// Whether a polyline meets the open region bounded by a simple ring: split
/// the polyline at every ring contact and test each piece's midpoint.
inline bool polyline_meets_ring_interior(std::span<const Point> pts, std::span<const Point> ring) {
  std::size_t m = ring.size();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[i + 1];
    std::vector<Rational> params{Rational(0), Rational(1)};
    Rational dx = b.x - a.x, dy = b.y - a.y;
    for (std::size_t k = 0; k < m; ++k) {
      const Point& c = ring[k];
      const Point& d = ring[(k + 1) % m];
      SegHit h = segment_hit(a, b, c, d);
      auto param = [&](const Point& q) -> Rational { return dx != 0 ? (q.x - a.x) / dx : (q.y - a.y) / dy; };
      if (h.p) params.push_back(param(*h.p));
      if (h.overlap) {
        for (const Point* q : {&c, &d}) {
          Rational s = param(*q);
          if (s >= 0 && s <= 1) params.push_back(s);
        }
      }
    }
    std::sort(params.begin(), params.end());
    for (std::size_t k = 0; k + 1 < params.size(); ++k) {
      if (params[k] == params[k + 1]) continue;
      Rational s = (params[k] + params[k + 1]) / 2;
      if (strictly_inside_ring(ring, Point{a.x + dx * s, a.y + dy * s})) return true;
    }
  }
  return false;
}

/// Cell count of the vertical decomposition of straight segments inside the
/// box [x0,x1]x[y0,y1], by Euler's formula on the planar graph made of the
/// segments, the box and brute-force ray-shot walls. Requires all event
/// abscissae (endpoints and crossings) to be distinct; returns nullopt otherwise.
inline std::optional<std::size_t> segment_decomposition_cells(const std::vector<std::pair<Point, Point>>& segs,
                                                              const Rational& x0, const Rational& x1,
                                                              const Rational& y0, const Rational& y1) {
  std::vector<std::vector<Point>> on_seg(segs.size());
  std::vector<Point> events;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    on_seg[i] = {segs[i].first, segs[i].second};
    events.push_back(segs[i].first);
    events.push_back(segs[i].second);
  }
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      SegHit h = segment_hit(segs[i].first, segs[i].second, segs[j].first, segs[j].second);
      if (h.overlap) return std::nullopt;
      if (!h.p) continue;
      events.push_back(*h.p);
      on_seg[i].push_back(*h.p);
      on_seg[j].push_back(*h.p);
    }
  std::vector<Rational> xs;
  for (const auto& e : events) xs.push_back(e.x);
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return std::nullopt;

  std::vector<Point> verts{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  std::vector<Rational> bottom_hits, top_hits;
  std::size_t wall_edges = 0;
  for (const auto& e : events) {
    verts.push_back(e);
    for (int dir : {1, -1}) {
      std::optional<std::size_t> best;
      Rational best_y = dir > 0 ? y1 : y0;
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const Point& a = segs[i].first;
        const Point& b = segs[i].second;
        if ((e.x < a.x && e.x < b.x) || (e.x > a.x && e.x > b.x)) continue;
        Rational y = a.y + (b.y - a.y) * (e.x - a.x) / (b.x - a.x);
        if (dir > 0 ? (y > e.y && y < best_y) : (y < e.y && y > best_y)) {
          best_y = y;
          best = i;
        }
      }
      Point hit{e.x, best_y};
      verts.push_back(hit);
      if (best) on_seg[*best].push_back(hit);
      else (dir > 0 ? top_hits : bottom_hits).push_back(e.x);
      ++wall_edges;
    }
  }
  std::sort(verts.begin(), verts.end(), lex_less);
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::size_t edges = wall_edges + 2 + (bottom_hits.size() + 1) + (top_hits.size() + 1);
  for (auto& pts : on_seg) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    edges += pts.size() - 1;
  }
  return edges + 1 - verts.size();
}

/// Exact maximum of min(|S1|, |S2|) over disjoint S1, S2 with every cross
/// pair meeting (crossing = true) or every cross pair disjoint. For each S1
/// the best S2 is everything outside S1 related to all of S1.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> max_biclique(const std::vector<Polyline>& curves,
                                                                                  bool crossing) {
  const std::size_t n = curves.size();
  if (n > 16) throw Error(ErrorCode::TooLarge, "max_biclique is limited to 16 curves");
  std::vector<std::uint32_t> related(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && polylines_touch(curves[i], curves[j]) == crossing) related[i] |= std::uint32_t{1} << j;
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> best;
  std::size_t best_value = 0;
  for (std::uint32_t s1 = 1; s1 < (std::uint32_t{1} << n); ++s1) {
    std::uint32_t s2 = ((std::uint32_t{1} << n) - 1) & ~s1;
    for (std::size_t i = 0; i < n; ++i)
      if (s1 >> i & 1) s2 &= related[i];
    std::size_t value = std::min<std::size_t>(__builtin_popcount(s1), __builtin_popcount(s2));
    if (value <= best_value) continue;
    best_value = value;
    best = {};
    for (std::size_t i = 0; i < n; ++i) {
      if (s1 >> i & 1) best.first.push_back(i);
      if (s2 >> i & 1) best.second.push_back(i);
    }
  }
  return best;
}

/// Exact maximum set of pairwise disjoint edges (no shared vertex, no common
/// point of the drawings): tries subsets of size 1, 2, ... in lexicographic
/// order and keeps the first of the largest feasible size.
inline std::vector<std::size_t> max_disjoint_edges(const TopoGraph& g) {
  const std::size_t m = g.edges.size();
  if (m > 32) throw Error(ErrorCode::TooLarge, "max_disjoint_edges is limited to 32 edges");
  std::vector<std::vector<bool>> ok(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& a = g.edges[i];
      const auto& b = g.edges[j];
      bool share = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
      ok[i][j] = i != j && !share && !polylines_touch(a.pts, b.pts);
    }
  std::vector<std::size_t> best, cur;
  // Depth-first search over index-increasing subsets of exactly `size`.
  auto find = [&](auto&& self, std::size_t from, std::size_t size) -> bool {
    if (cur.size() == size) return true;
    for (std::size_t e = from; e < m; ++e) {
      if (!std::all_of(cur.begin(), cur.end(), [&](std::size_t x) { return ok[x][e]; })) continue;
      cur.push_back(e);
      if (self(self, e + 1, size)) return true;
      cur.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= m; ++size) {
    cur.clear();
    if (!find(find, 0, size)) break;
    best = cur;
  }
  return best;
}

}  // namespace mcd::oracle
