#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mcd/geom.hpp"
#include "mcd/trapezoidal.hpp"

namespace mcd {

/// Faces of the arrangement formed by a few closed polygonal rings (which may
/// touch, cross or share pieces). Each face is an open connected component
/// of the plane minus the rings, identified by id and an interior witness.
class RingArrangement {
 public:
  RingArrangement() = default;

  explicit RingArrangement(std::vector<Polyline> rings) : rings_(std::move(rings)) { build(); }

  const std::vector<Polyline>& rings() const { return rings_; }
  std::size_t face_count() const { return witnesses_.size(); }
  const Point& witness(std::size_t face) const { return witnesses_[face]; }

  /// Whether the face lies inside ring k (faces never straddle a ring).
  bool face_inside(std::size_t face, std::size_t k) const { return point_in_ring(rings_[k], witnesses_[face]); }

  /// Face containing p, or nullopt when p lies on a ring.
  std::optional<std::size_t> locate(const Point& p) const {
    if (p.x <= bounds_.front() || p.x >= bounds_.back()) return outer_;
    auto it = std::upper_bound(bounds_.begin(), bounds_.end(), p.x);
    std::size_t s = static_cast<std::size_t>(it - bounds_.begin()) - 1;
    if (p.x == bounds_[s]) {
      const Column& col = columns_[s - 1];
      for (const auto& [lo, hi] : col.blockers)
        if (p.y >= lo && p.y <= hi) return std::nullopt;
      std::size_t i = 0;
      while (i < col.cuts.size() && col.cuts[i] < p.y) ++i;
      if (i < col.cuts.size() && col.cuts[i] == p.y) return std::nullopt;
      return col.interval_face[i];
    }
    std::size_t g = 0;
    for (auto e : slab_edges_[s]) {
      Rational y = line_y_at(edges_[e].first, edges_[e].second, p.x);
      if (y == p.y) return std::nullopt;
      if (y < p.y) ++g;
    }
    return slab_faces_[s][g];
  }

 private:
  struct Column {
    std::vector<Rational> cuts;
    std::vector<std::pair<Rational, Rational>> blockers;
    std::vector<std::optional<std::size_t>> interval_face;
  };

  void build() {
    std::vector<std::pair<Point, Point>> verticals;
    std::vector<Rational> xs;
    for (const auto& ring : rings_) {
      for (std::size_t i = 0; i < ring.size(); ++i) {
        Point a = ring[i], b = ring[(i + 1) % ring.size()];
        if (a == b) continue;
        xs.push_back(a.x);
        if (a.x == b.x) {
          if (b.y < a.y) std::swap(a, b);
          verticals.emplace_back(a, b);
        } else {
          if (b.x < a.x) std::swap(a, b);
          edges_.emplace_back(a, b);
        }
      }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i)
      for (std::size_t j = i + 1; j < edges_.size(); ++j) {
        SegmentMeet m = meet_segments(edges_[i].first, edges_[i].second, edges_[j].first, edges_[j].second);
        if (m.kind == SegmentRelation::Point) xs.push_back(m.p.x);
      }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) xs.push_back(0);
    Rational ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& ring : rings_)
      for (const auto& p : ring) {
        if (first || p.y < ymin) ymin = p.y;
        if (first || p.y > ymax) ymax = p.y;
        first = false;
      }
    bounds_.push_back(xs.front() - 1);
    bounds_.insert(bounds_.end(), xs.begin(), xs.end());
    bounds_.push_back(xs.back() + 1);
    const std::size_t slabs = bounds_.size() - 1;

    std::vector<std::size_t> base(slabs + 1, 0);
    slab_edges_.resize(slabs);
    for (std::size_t s = 0; s < slabs; ++s) {
      Rational mid = (bounds_[s] + bounds_[s + 1]) / 2;
      std::vector<std::pair<Rational, std::size_t>> keyed;
      for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edges_[e].first.x <= bounds_[s] && edges_[e].second.x >= bounds_[s + 1])
          keyed.emplace_back(line_y_at(edges_[e].first, edges_[e].second, mid), e);
      std::sort(keyed.begin(), keyed.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      // Collinear overlapping edges coincide inside the slab: keep one.
      for (std::size_t k = 0; k < keyed.size(); ++k)
        if (k == 0 || keyed[k].first != keyed[k - 1].first) slab_edges_[s].push_back(keyed[k].second);
      base[s + 1] = base[s] + slab_edges_[s].size() + 1;
    }

    detail::UnionFind uf(base[slabs]);
    columns_.resize(slabs - 1);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> merges(slabs - 1);
    for (std::size_t k = 0; k + 1 < slabs; ++k) {
      const Rational& X = bounds_[k + 1];
      auto values = [&](std::size_t s) {
        std::vector<Rational> ys;
        for (auto e : slab_edges_[s]) ys.push_back(line_y_at(edges_[e].first, edges_[e].second, X));
        return ys;
      };
      std::vector<Rational> left = values(k), right = values(k + 1);
      Column& col = columns_[k];
      col.cuts = left;
      col.cuts.insert(col.cuts.end(), right.begin(), right.end());
      for (const auto& [a, b] : verticals)
        if (a.x == X) {
          col.blockers.emplace_back(a.y, b.y);
          col.cuts.push_back(a.y);
          col.cuts.push_back(b.y);
        }
      std::sort(col.cuts.begin(), col.cuts.end());
      col.cuts.erase(std::unique(col.cuts.begin(), col.cuts.end()), col.cuts.end());
      for (std::size_t i = 0; i <= col.cuts.size(); ++i) {
        bool blocked = false;
        if (i > 0 && i < col.cuts.size())
          for (const auto& [lo, hi] : col.blockers)
            if (lo <= col.cuts[i - 1] && hi >= col.cuts[i]) blocked = true;
        if (blocked) continue;
        std::size_t lg = 0, rg = 0;
        if (i > 0) {
          const Rational& lo = col.cuts[i - 1];
          lg = std::upper_bound(left.begin(), left.end(), lo) - left.begin();
          rg = std::upper_bound(right.begin(), right.end(), lo) - right.begin();
        }
        uf.unite(base[k] + lg, base[k + 1] + rg);
        merges[k].emplace_back(i, lg);
      }
    }

    std::map<std::size_t, std::size_t> face_of_root;
    slab_faces_.resize(slabs);
    for (std::size_t s = 0; s < slabs; ++s) {
      const auto& se = slab_edges_[s];
      Rational mid = (bounds_[s] + bounds_[s + 1]) / 2;
      for (std::size_t g = 0; g <= se.size(); ++g) {
        auto [it, fresh] = face_of_root.emplace(uf.find(base[s] + g), witnesses_.size());
        if (fresh) {
          Rational lo = g == 0 ? ymin - 2 : line_y_at(edges_[se[g - 1]].first, edges_[se[g - 1]].second, mid);
          Rational hi = g == se.size() ? ymax + 2 : line_y_at(edges_[se[g]].first, edges_[se[g]].second, mid);
          if (g == 0 && se.empty()) hi = ymax + 2;
          witnesses_.push_back(Point{mid, (lo + hi) / 2});
        }
        slab_faces_[s].push_back(it->second);
      }
    }
    outer_ = slab_faces_[0][0];
    for (std::size_t k = 0; k < columns_.size(); ++k) {
      columns_[k].interval_face.assign(columns_[k].cuts.size() + 1, std::nullopt);
      for (auto [i, lg] : merges[k]) columns_[k].interval_face[i] = slab_faces_[k][lg];
    }
  }

  std::vector<Polyline> rings_;
  std::vector<std::pair<Point, Point>> edges_;  // non-vertical, x-increasing
  std::vector<Rational> bounds_;
  std::vector<std::vector<std::size_t>> slab_edges_;
  std::vector<std::vector<std::size_t>> slab_faces_;
  std::vector<Column> columns_;
  std::vector<Point> witnesses_;
  std::size_t outer_ = 0;
};

/// Piece of a polyline between consecutive points where it meets any of a set
/// of rings. Its relative interior is either on some ring or off all of them,
/// and in the latter case inside or outside each ring throughout.
struct RingPiece {
  Polyline pts;
  bool on_boundary = false;
  std::vector<bool> inside;  // per ring; empty when on_boundary
};

inline std::vector<RingPiece> split_at_rings(std::span<const Point> pts, const std::vector<Polyline>& rings) {
  auto on_any = [&](const Point& p) {
    for (const auto& r : rings)
      if (on_ring(r, p)) return true;
    return false;
  };
  std::vector<RingPiece> out;
  Polyline cur{pts[0]};
  auto close = [&] {
    RingPiece piece;
    Point m = midpoint(cur[0], cur[1]);
    piece.on_boundary = on_any(m);
    if (!piece.on_boundary)
      for (const auto& r : rings) piece.inside.push_back(point_in_ring(r, m));
    piece.pts = std::move(cur);
    out.push_back(std::move(piece));
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[i + 1];
    Rational dx = b.x - a.x, dy = b.y - a.y;
    auto param = [&](const Point& q) -> Rational { return dx != 0 ? (q.x - a.x) / dx : (q.y - a.y) / dy; };
    std::vector<Rational> cuts;
    for (const auto& r : rings)
      for (std::size_t k = 0; k < r.size(); ++k) {
        const Point& c = r[k];
        const Point& d = r[(k + 1) % r.size()];
        SegmentMeet m = meet_segments(a, b, c, d);
        if (m.kind == SegmentRelation::Point) cuts.push_back(param(m.p));
        if (m.kind == SegmentRelation::Overlap)
          for (const Point* q : {&c, &d})
            if (on_segment(*q, a, b)) cuts.push_back(param(*q));
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (const auto& s : cuts) {
      if (s <= 0 || s >= 1) continue;
      cur.push_back(lerp(a, b, s));
      close();
      cur = Polyline{lerp(a, b, s)};
    }
    cur.push_back(b);
    if (i + 2 < pts.size() && on_any(b)) {
      close();
      cur = Polyline{b};
    }
  }
  close();
  return out;
}

}  // namespace mcd
