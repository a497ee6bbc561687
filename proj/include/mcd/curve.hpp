#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcd/error.hpp"
#include "mcd/geom.hpp"
#include "mcd/random.hpp"

namespace mcd {

namespace detail {

inline int count_reversals(std::span<const Point> pts) {
  int reversals = 0;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    bool before = pts[i].x > pts[i - 1].x;
    bool after = pts[i + 1].x > pts[i].x;
    if (before != after) ++reversals;
  }
  return reversals;
}

}  // namespace detail

/// Piecewise-linear curve with at most t-1 x-direction reversals. A vertex
/// where the sign of dx flips plays the role of a vertical tangent point.
class TMonotoneCurve {
 public:
  TMonotoneCurve(std::string id, std::vector<Point> vertices, int t_budget)
      : id_(std::move(id)), vertices_(std::move(vertices)), t_budget_(t_budget) {
    if (t_budget_ < 1) fail("t budget must be positive");
    if (vertices_.size() < 2) fail("needs at least two vertices");
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
      if (vertices_[i].x == vertices_[i + 1].x) fail("vertical edge at vertex " + std::to_string(i));
    reversals_ = detail::count_reversals(vertices_);
    if (reversals_ > t_budget_ - 1)
      fail(std::to_string(reversals_) + " x-reversals exceed budget t-1 = " + std::to_string(t_budget_ - 1));
    if (!is_simple_polyline(vertices_)) fail("self-intersecting polyline");
    box_ = polyline_box(vertices_);
  }

  const std::string& id() const { return id_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  std::span<const Point> points() const { return vertices_; }
  int t_budget() const { return t_budget_; }
  int reversals() const { return reversals_; }
  const Box& box() const { return box_; }

  const Point& left_endpoint() const {
    return vertices_.front().x < vertices_.back().x ? vertices_.front() : vertices_.back();
  }
  const Point& right_endpoint() const {
    return vertices_.front().x < vertices_.back().x ? vertices_.back() : vertices_.front();
  }

  /// Endpoints and reversal vertices.
  std::vector<Point> critical_points() const {
    std::vector<Point> out{vertices_.front()};
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
      bool before = vertices_[i].x > vertices_[i - 1].x;
      bool after = vertices_[i + 1].x > vertices_[i].x;
      if (before != after) out.push_back(vertices_[i]);
    }
    out.push_back(vertices_.back());
    return out;
  }

  /// The x-monotone pieces between consecutive critical points, each
  /// returned with increasing x.
  std::vector<std::vector<Point>> monotone_pieces() const {
    std::vector<std::vector<Point>> pieces;
    std::vector<Point> cur{vertices_.front()};
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
      cur.push_back(vertices_[i]);
      bool last = i + 1 == vertices_.size();
      bool flip = !last && ((vertices_[i].x > vertices_[i - 1].x) != (vertices_[i + 1].x > vertices_[i].x));
      if (last || flip) {
        if (cur.front().x > cur.back().x) std::reverse(cur.begin(), cur.end());
        pieces.push_back(std::move(cur));
        cur = {vertices_[i]};
      }
    }
    return pieces;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ValidationError, "curve '" + id_ + "': " + why);
  }

  std::string id_;
  std::vector<Point> vertices_;
  int t_budget_;
  int reversals_ = 0;
  Box box_;
};

struct CurveFamily {
  std::vector<TMonotoneCurve> curves;
  int t = 1;

  std::size_t size() const { return curves.size(); }
  const TMonotoneCurve& operator[](std::size_t i) const { return curves[i]; }

  static CurveFamily from(std::vector<TMonotoneCurve> curves) {
    CurveFamily f;
    for (const auto& c : curves) f.t = std::max(f.t, c.t_budget());
    f.curves = std::move(curves);
    return f;
  }

  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> idx(curves.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }

  CurveFamily subfamily(std::span<const std::size_t> indices) const {
    std::vector<TMonotoneCurve> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(curves[i]);
    CurveFamily f = from(std::move(out));
    f.t = std::max(f.t, t);
    return f;
  }
};

/// Common points of a and b sorted by (x, y); tangencies and endpoint
/// contacts are flagged through Contact::kind.
inline std::vector<Contact> intersect_pair(const TMonotoneCurve& a, const TMonotoneCurve& b) {
  if (!a.box().overlaps(b.box())) return {};
  return polyline_contacts(a.points(), b.points());
}

inline bool curves_meet(const TMonotoneCurve& a, const TMonotoneCurve& b) {
  if (!a.box().overlaps(b.box())) return false;
  return polylines_meet(a.points(), b.points());
}

/// Symmetric boolean relation on n items, diagonal false.
class RelationMatrix {
 public:
  RelationMatrix() = default;
  explicit RelationMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) {
    bits_[i * n_ + j] = value;
    bits_[j * n_ + i] = value;
  }
  std::size_t count_pairs() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) c += (*this)(i, j);
    return c;
  }
  friend bool operator==(const RelationMatrix& a, const RelationMatrix& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline RelationMatrix intersection_matrix(const CurveFamily& f) {
  RelationMatrix m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) m.set(i, j, curves_meet(f[i], f[j]));
  return m;
}

struct Witness {
  std::vector<std::string> curve_ids;
  std::optional<Point> point;
  std::string reason;
};

struct ValidationReport {
  bool simple = true;
  bool general_position = true;
  std::optional<Witness> simple_witness;
  std::optional<Witness> general_position_witness;

  bool ok() const { return simple && general_position; }
};

/// Simple: every pair shares at most one point and no interior point is a
/// tangency. General position: endpoint abscissae pairwise distinct, no
/// endpoint on another curve, no point common to three curves.
inline ValidationReport validate_family(const CurveFamily& f) {
  ValidationReport rep;
  auto fail_simple = [&](Witness w) {
    if (rep.simple) rep.simple_witness = std::move(w);
    rep.simple = false;
  };
  auto fail_gp = [&](Witness w) {
    if (rep.general_position) rep.general_position_witness = std::move(w);
    rep.general_position = false;
  };

  struct Shared {
    Point p;
    std::size_t a, b;
  };
  std::vector<Shared> shared;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      std::vector<Contact> contacts;
      try {
        contacts = intersect_pair(f[i], f[j]);
      } catch (const Error&) {
        fail_simple({{f[i].id(), f[j].id()}, std::nullopt, "overlapping sub-segments"});
        fail_gp({{f[i].id(), f[j].id()}, std::nullopt, "overlapping sub-segments"});
        continue;
      }
      if (contacts.size() > 1)
        fail_simple({{f[i].id(), f[j].id()}, contacts[1].p,
                     "pair shares " + std::to_string(contacts.size()) + " points"});
      for (const auto& c : contacts) {
        if (c.kind == ContactKind::Touching) fail_simple({{f[i].id(), f[j].id()}, c.p, "tangential contact"});
        if (c.kind == ContactKind::Endpoint) fail_gp({{f[i].id(), f[j].id()}, c.p, "endpoint lies on another curve"});
        shared.push_back({c.p, i, j});
      }
    }
  }

  std::map<Point, std::vector<std::size_t>, LexLess> by_point;
  for (const auto& s : shared) {
    auto& v = by_point[s.p];
    v.push_back(s.a);
    v.push_back(s.b);
  }
  for (auto& [p, ids] : by_point) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() >= 3) {
      Witness w{{}, p, "three or more curves share a point"};
      for (auto k : ids) w.curve_ids.push_back(f[k].id());
      fail_gp(std::move(w));
    }
  }

  std::vector<std::pair<Rational, std::size_t>> xs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    xs.emplace_back(f[i].vertices().front().x, i);
    xs.emplace_back(f[i].vertices().back().x, i);
  }
  std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (xs[k].first == xs[k + 1].first) {
      fail_gp({{f[xs[k].second].id(), f[xs[k + 1].second].id()}, std::nullopt,
               "endpoints share x = " + to_string(xs[k].first)});
      break;
    }
  }
  return rep;
}

namespace detail {

/// Smallest positive gap between any two distinct vertex coordinates.
inline Rational coordinate_separation(const CurveFamily& f) {
  std::vector<Rational> xs, ys;
  for (const auto& c : f.curves)
    for (const auto& p : c.vertices()) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
  Rational best(1);
  bool found = false;
  for (auto* v : {&xs, &ys}) {
    std::sort(v->begin(), v->end());
    for (std::size_t i = 0; i + 1 < v->size(); ++i) {
      Rational d = (*v)[i + 1] - (*v)[i];
      if (d > 0 && (!found || d < best)) {
        best = d;
        found = true;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Moves curves by less than a verified safe radius so the family reaches
/// general position while keeping its intersection matrix. Endpoints lying
/// on another curve are first pushed through that curve along their end
/// segment, turning the contact into a proper crossing.
inline CurveFamily perturb_to_general_position(const CurveFamily& f, std::uint64_t seed) {
  ValidationReport rep = validate_family(f);
  if (!rep.simple) throw Error(ErrorCode::SafeRadiusZero, "family is not simple (tangent or overlapping curves)");
  if (rep.general_position) return f;
  const RelationMatrix target = intersection_matrix(f);

  Rational radius = detail::coordinate_separation(f) / 2;
  Rng rng(derive_seed(seed, stream::kPerturb));
  for (int attempt = 0; attempt < 64; ++attempt, radius /= 2) {
    std::vector<TMonotoneCurve> moved;
    moved.reserve(f.size());
    bool valid = true;
    for (std::size_t i = 0; i < f.size() && valid; ++i) {
      std::vector<Point> pts = f[i].vertices();
      // Extend both ends slightly along their end segments.
      for (int end = 0; end < 2; ++end) {
        std::size_t e = end == 0 ? 0 : pts.size() - 1;
        std::size_t n = end == 0 ? 1 : pts.size() - 2;
        bool touches = false;
        for (std::size_t j = 0; j < f.size() && !touches; ++j)
          if (j != i && f[j].box().contains(pts[e]))
            for (std::size_t k = 0; k + 1 < f[j].vertices().size(); ++k)
              if (on_segment(pts[e], f[j].vertices()[k], f[j].vertices()[k + 1])) {
                touches = true;
                break;
              }
        if (!touches) continue;
        Rational span = abs(pts[e].x - pts[n].x) + abs(pts[e].y - pts[n].y);
        Rational step = radius / span;
        pts[e] = Point{pts[e].x + (pts[e].x - pts[n].x) * step, pts[e].y + (pts[e].y - pts[n].y) * step};
      }
      Rational dx = rng.rational(-radius, radius, 20) / 2;
      Rational dy = rng.rational(-radius, radius, 20) / 2;
      for (auto& p : pts) {
        p.x += dx;
        p.y += dy;
      }
      try {
        moved.emplace_back(f[i].id(), std::move(pts), f[i].t_budget());
      } catch (const Error&) {
        valid = false;
      }
    }
    if (!valid) continue;
    CurveFamily candidate = CurveFamily::from(std::move(moved));
    candidate.t = f.t;
    ValidationReport r = validate_family(candidate);
    if (r.ok() && intersection_matrix(candidate) == target) return candidate;
  }
  throw Error(ErrorCode::SafeRadiusZero, "no safe perturbation radius found");
}

}  // namespace mcd
