#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mcd/curve.hpp"
#include "mcd/error.hpp"
#include "mcd/graph.hpp"
#include "mcd/random.hpp"

namespace mcd {

enum class GeneratorKind {
  RandomSegments,
  RandomTMonotone,
  AllCrossing,
  ClusteredDisjoint,
  ConvexComplete,
  BipartiteStrip,
  DenseBipartite,
  WavyBipartite,
  StarThrackle,
  BandedBicolored,
  RandomPoints,
};

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::RandomSegments: return "random-segments";
    case GeneratorKind::RandomTMonotone: return "random-tmonotone";
    case GeneratorKind::AllCrossing: return "all-crossing";
    case GeneratorKind::ClusteredDisjoint: return "clustered-disjoint";
    case GeneratorKind::ConvexComplete: return "convex-complete";
    case GeneratorKind::BipartiteStrip: return "bipartite-strip";
    case GeneratorKind::DenseBipartite: return "dense-bipartite";
    case GeneratorKind::WavyBipartite: return "wavy-bipartite";
    case GeneratorKind::StarThrackle: return "star-thrackle";
    case GeneratorKind::BandedBicolored: return "banded-bicolored";
    case GeneratorKind::RandomPoints: return "random-points";
  }
  return "?";
}

inline GeneratorKind generator_kind_from(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(GeneratorKind::RandomPoints); ++k)
    if (s == to_string(static_cast<GeneratorKind>(k))) return static_cast<GeneratorKind>(k);
  throw Error(ErrorCode::ValidationError, "unknown generator kind " + s);
}

/// n counts curves, vertices (per class for bipartite kinds) or points.
/// `spread` is the side of the placement box and `length` the typical curve
/// size; `edges` and `max_k` only concern the bipartite kinds.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::RandomSegments;
  int n = 10;
  int t = 1;
  std::uint64_t seed = 0;
  Rational spread = 100;
  Rational length = 20;
  int edges = 0;
  int max_k = 3;
};

using Generated = std::variant<CurveFamily, TopoGraph, std::vector<Point>>;

namespace detail {

inline constexpr int kRetries = 100;
inline constexpr int kPlacementTries = 400;

struct Retry {};

/// Rational approximation on a 2^-20 grid, for directions and angles.
inline Rational grid(double v) {
  return ratio(static_cast<long>(std::llround(v * 1048576.0)), 1048576);
}

/// Adds curves one at a time, keeping the family simple and in general position.
class FamilyBuilder {
 public:
  bool try_add(TMonotoneCurve c) {
    for (const Point* e : {&c.vertices().front(), &c.vertices().back()})
      if (endpoint_xs_.count(e->x)) return false;
    std::vector<Point> hits;
    for (const auto& o : curves_) {
      std::vector<Contact> cs;
      try {
        cs = intersect_pair(c, o);
      } catch (const Error&) {
        return false;
      }
      if (cs.size() > 1) return false;
      if (cs.size() == 1) {
        if (cs[0].kind != ContactKind::Crossing) return false;
        if (std::find(hits.begin(), hits.end(), cs[0].p) != hits.end()) return false;
        if (crossing_points_.count(cs[0].p)) return false;
        hits.push_back(cs[0].p);
      }
    }
    endpoint_xs_.insert(c.vertices().front().x);
    endpoint_xs_.insert(c.vertices().back().x);
    crossing_points_.insert(hits.begin(), hits.end());
    curves_.push_back(std::move(c));
    return true;
  }

  std::size_t size() const { return curves_.size(); }
  std::vector<TMonotoneCurve> take() { return std::move(curves_); }

 private:
  std::vector<TMonotoneCurve> curves_;
  std::set<Rational> endpoint_xs_;
  std::set<Point, LexLess> crossing_points_;
};

template <typename MakeCurve>
CurveFamily fill_family(int n, int t, MakeCurve make) {
  FamilyBuilder b;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int k = 0; k < kPlacementTries && !placed; ++k) placed = b.try_add(make(i));
    if (!placed) throw Retry{};
  }
  CurveFamily f = CurveFamily::from(b.take());
  f.t = std::max(f.t, t);
  return f;
}

inline CurveFamily random_segments(const GeneratorSpec& s, Rng& rng) {
  return fill_family(s.n, 1, [&](int i) {
    Point a{rng.rational(0, s.spread, 16), rng.rational(0, s.spread, 16)};
    Point b{a.x + rng.rational(s.length / 20, s.length, 16), a.y + rng.rational(-s.length, s.length, 16)};
    return TMonotoneCurve("c" + std::to_string(i), {a, b}, 1);
  });
}

/// Zigzags with strictly increasing y (hence non-self-intersecting) and
/// exactly t-1 x-reversals.
inline CurveFamily random_tmonotone(const GeneratorSpec& s, Rng& rng) {
  return fill_family(s.n, s.t, [&](int i) {
    std::vector<Point> pts{{rng.rational(0, s.spread, 16), rng.rational(0, s.spread, 16)}};
    int dir = rng.bernoulli(1, 2) ? 1 : -1;
    for (int piece = 0; piece < s.t; ++piece, dir = -dir) {
      int segs = 1 + static_cast<int>(rng.below(2));
      for (int k = 0; k < segs; ++k) {
        Rational dx = rng.rational(s.length / 8, s.length / segs, 16);
        Rational dy = rng.rational(s.length / 16, s.length / (2 * s.t), 16);
        pts.push_back({pts.back().x + dx * dir, pts.back().y + dy});
      }
    }
    return TMonotoneCurve("c" + std::to_string(i), std::move(pts), s.t);
  });
}

/// Long segments with distinct directions through a unit disk around `center`.
inline std::vector<TMonotoneCurve> crossing_bundle(int n, const Point& center, int first_id, Rng& rng) {
  std::vector<TMonotoneCurve> out;
  Rational reach = 64 * std::max(n, 4);
  for (int i = 0; i < n; ++i) {
    double theta = std::numbers::pi * (i + 0.3) / n;
    Point d{grid(std::cos(theta)), grid(std::sin(theta))};
    Point c{center.x + rng.rational(-1, 1, 20), center.y + rng.rational(-1, 1, 20)};
    Point a{c.x - d.x * reach, c.y - d.y * reach};
    Point b{c.x + d.x * reach, c.y + d.y * reach};
    out.emplace_back("c" + std::to_string(first_id + i), std::vector<Point>{a, b}, 1);
  }
  return out;
}

inline CurveFamily all_crossing(const GeneratorSpec& s, Rng& rng) {
  CurveFamily f = CurveFamily::from(crossing_bundle(s.n, Point{0, 0}, 0, rng));
  if (!validate_family(f).ok() || intersection_matrix(f).count_pairs() != f.size() * (f.size() - 1) / 2) throw Retry{};
  return f;
}

inline CurveFamily clustered_disjoint(const GeneratorSpec& s, Rng& rng) {
  int half = s.n / 2;
  auto first = crossing_bundle(half, Point{0, 0}, 0, rng);
  Rational shift = 2 * 64 * std::max(s.n - half, 4) + 64 * std::max(half, 4) + 10;
  auto second = crossing_bundle(s.n - half, Point{shift, 0}, half, rng);
  first.insert(first.end(), second.begin(), second.end());
  CurveFamily f = CurveFamily::from(std::move(first));
  if (!validate_family(f).ok()) throw Retry{};
  return f;
}

/// k points in convex position at jittered angles on a circle of radius 1000.
inline std::vector<Point> convex_points(int k, Rng& rng) {
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) {
    double theta = 2 * std::numbers::pi * (i + 0.1 + 0.8 * rng.unit()) / k;
    pts.push_back({grid(1000 * std::cos(theta)), grid(1000 * std::sin(theta))});
  }
  std::vector<Rational> xs;
  for (const auto& p : pts) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) throw Retry{};
  return pts;
}

inline TopoGraph finish_graph(TopoGraph g) {
  GraphCheck c = check_graph(g);
  if (!c.valid || !c.simple) throw Retry{};
  g.simple = true;
  return g;
}

inline TopoGraph straight_graph(const std::vector<Point>& pts, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  TopoGraph g;
  for (std::size_t i = 0; i < pts.size(); ++i) g.vertices.push_back({"v" + std::to_string(i), pts[i]});
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    auto [u, v] = pairs[e];
    g.edges.push_back({"e" + std::to_string(e), u, v, {pts[u], pts[v]}});
  }
  return finish_graph(std::move(g));
}

inline TopoGraph convex_complete(const GeneratorSpec& s, Rng& rng) {
  auto pts = convex_points(s.n, rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) pairs.emplace_back(i, j);
  return straight_graph(pts, pairs);
}

/// Odd star polygon {n / (n-1)/2}: every two non-adjacent edges cross.
inline TopoGraph star_thrackle(const GeneratorSpec& s, Rng& rng) {
  if (s.n < 3 || s.n % 2 == 0) throw Error(ErrorCode::ValidationError, "star thrackle needs an odd vertex count >= 3");
  auto pts = convex_points(s.n, rng);
  int h = (s.n - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < s.n; ++i) pairs.emplace_back(i, (i + h) % s.n);
  return straight_graph(pts, pairs);
}

/// Class A above y = 1, class B below y = 0, both spread over [0, spread].
inline TopoGraph bipartite_vertices(const GeneratorSpec& s, Rng& rng, const Rational& gap) {
  TopoGraph g;
  std::set<Rational> xs;
  auto place = [&](const std::string& prefix, const Rational& ylo, const Rational& yhi) {
    for (int i = 0; i < s.n; ++i) {
      Point p{rng.rational(0, s.spread, 16), rng.rational(ylo, yhi, 16)};
      if (!xs.insert(p.x).second) throw Retry{};
      g.vertices.push_back({prefix + std::to_string(i), p});
    }
  };
  place("a", 1 + gap, 1 + 2 * gap);
  place("b", -2 * gap, -gap);
  return g;
}

struct NoHook {
  void operator()() const {}
};

template <typename MakeEdge, typename OnAccept = NoHook>
TopoGraph fill_edges(TopoGraph g, int n, int m, Rng& rng, MakeEdge make, OnAccept on_accept = {}) {
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (int e = 0; e < m; ++e) {
    bool placed = false;
    for (int k = 0; k < kPlacementTries && !placed; ++k) {
      std::size_t a = rng.below(static_cast<std::uint64_t>(n));
      std::size_t b = static_cast<std::size_t>(n) + rng.below(static_cast<std::uint64_t>(n));
      if (used.count({a, b})) continue;
      TopoEdge edge{"e" + std::to_string(e), b, a, make(g.vertices[b].p, g.vertices[a].p)};
      if (!edge_problem(g, edge).empty()) continue;
      bool ok = true;
      for (const auto& o : g.edges)
        if (!edge_pair_simple(g, edge, o)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used.insert({a, b});
      g.edges.push_back(std::move(edge));
      on_accept();
      placed = true;
    }
    if (!placed) throw Retry{};
  }
  return finish_graph(std::move(g));
}

/// Edges cross the strip 0 <= y <= 1 only along vertical segments; each
/// edge owns a private x-block holding its k in {1, 3} verticals.
inline TopoGraph bipartite_strip(const GeneratorSpec& s, Rng& rng) {
  int m = s.edges > 0 ? s.edges : s.n;
  TopoGraph g = bipartite_vertices(s, rng, s.spread / 4);
  std::vector<long> blocks(static_cast<std::size_t>(2 * m));
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] = static_cast<long>(i);
  rng.shuffle(blocks);
  Rational width = s.spread / static_cast<long>(blocks.size());
  std::size_t pick = 0;
  auto make = [&](const Point& b, const Point& a) {
    pick = static_cast<std::size_t>(rng.below(blocks.size()));
    Rational x0 = width * blocks[pick];
    auto at = [&](int eighth) -> Rational { return x0 + width * eighth / 8; };
    int k = s.max_k >= 3 && rng.bernoulli(1, 3) ? 3 : 1;
    if (k == 1) return Polyline{b, {at(4), 0}, {at(4), 1}, a};
    Rational h = ratio(1, 4);
    return Polyline{b, {at(1), 0}, {at(1), 1}, {at(2), 1 + h}, {at(3), 1}, {at(3), 0}, {at(4), -h}, {at(5), 0}, {at(5), 1}, a};
  };
  auto consume = [&] {
    blocks[pick] = blocks.back();
    blocks.pop_back();
  };
  return fill_edges(std::move(g), s.n, m, rng, make, consume);
}

inline TopoGraph dense_bipartite(const GeneratorSpec& s, Rng& rng) {
  int m = s.edges > 0 ? s.edges : 2 * s.n;
  TopoGraph g = bipartite_vertices(s, rng, 1);
  return fill_edges(std::move(g), s.n, m, rng, [](const Point& b, const Point& a) { return Polyline{b, a}; });
}

/// Slanted, bent edges; with max_k >= 3 some edges traverse the band
/// between the classes three times.
inline TopoGraph wavy_bipartite(const GeneratorSpec& s, Rng& rng) {
  int m = s.edges > 0 ? s.edges : s.n;
  TopoGraph g = bipartite_vertices(s, rng, 1);
  Rational wobble = s.spread / 10;
  return fill_edges(std::move(g), s.n, m, rng, [&](const Point& b, const Point& a) {
    Rational mx = (a.x + b.x) / 2;
    if (s.max_k >= 3 && rng.bernoulli(1, 3)) {
      Point q1{mx + rng.rational(-wobble, wobble, 16), rng.rational(ratio(5, 4), ratio(7, 4), 16)};
      Point q2{mx + rng.rational(-wobble, wobble, 16), rng.rational(ratio(-3, 4), ratio(-1, 4), 16)};
      return Polyline{b, q1, q2, a};
    }
    Point q{mx + rng.rational(-wobble, wobble, 16), rng.rational(ratio(1, 4), ratio(3, 4), 16)};
    return Polyline{b, q, a};
  });
}

/// Alternating blue/red curves: blues run nearly horizontally across
/// [0, 10 spread] at heights in (0, spread]; reds are short steep segments in
/// the middle covering random height ranges, so they cross varying blues.
inline CurveFamily banded_bicolored(const GeneratorSpec& s, Rng& rng) {
  const Rational S = s.spread;
  return fill_family(s.n, 1, [&](int i) {
    if (i % 2 == 0) {
      Rational y = rng.rational(S / 64, S, 16);
      Point a{rng.rational(0, S / 64, 16), y};
      Point b{10 * S - rng.rational(0, S / 64, 16), y + rng.rational(-S / 16, S / 16, 16)};
      return TMonotoneCurve("b" + std::to_string(i / 2), {a, b}, 1);
    }
    Rational x = rng.rational(S, 9 * S, 16);
    Point a{x, rng.rational(0, S + S / 32, 16)};
    Point b{x + 3 * S / 100, rng.rational(0, S + S / 32, 16)};
    return TMonotoneCurve("r" + std::to_string(i / 2), {a, b}, 1);
  });
}

inline std::vector<Point> random_points(const GeneratorSpec& s, Rng& rng) {
  std::vector<Point> pts;
  for (int i = 0; i < s.n; ++i) pts.push_back({rng.rational(0, s.spread, 20), rng.rational(0, s.spread, 20)});
  return pts;
}

}  // namespace detail

/// Deterministic per seed; attempt k draws from the k-th derived stream and
/// the first attempt yielding a valid instance wins.
inline Generated generate(const GeneratorSpec& spec) {
  if (spec.n < 1 || spec.t < 1) throw Error(ErrorCode::ValidationError, "generator needs n >= 1 and t >= 1");
  for (int attempt = 0; attempt < detail::kRetries; ++attempt) {
    Rng rng(derive_seed(spec.seed, stream::kGenerator, static_cast<std::uint64_t>(attempt)));
    try {
      switch (spec.kind) {
        case GeneratorKind::RandomSegments: return detail::random_segments(spec, rng);
        case GeneratorKind::RandomTMonotone: return detail::random_tmonotone(spec, rng);
        case GeneratorKind::AllCrossing: return detail::all_crossing(spec, rng);
        case GeneratorKind::ClusteredDisjoint: return detail::clustered_disjoint(spec, rng);
        case GeneratorKind::ConvexComplete: return detail::convex_complete(spec, rng);
        case GeneratorKind::BipartiteStrip: return detail::bipartite_strip(spec, rng);
        case GeneratorKind::DenseBipartite: return detail::dense_bipartite(spec, rng);
        case GeneratorKind::WavyBipartite: return detail::wavy_bipartite(spec, rng);
        case GeneratorKind::StarThrackle: return detail::star_thrackle(spec, rng);
        case GeneratorKind::BandedBicolored: return detail::banded_bicolored(spec, rng);
        case GeneratorKind::RandomPoints: return detail::random_points(spec, rng);
      }
    } catch (const detail::Retry&) {
    }
  }
  throw Error(ErrorCode::RetriesExhausted, std::string("generator ") + to_string(spec.kind) + " failed after retries");
}

inline CurveFamily generate_family(const GeneratorSpec& spec) {
  auto g = generate(spec);
  if (auto* f = std::get_if<CurveFamily>(&g)) return std::move(*f);
  throw Error(ErrorCode::ValidationError, "generator does not produce a curve family");
}

struct Bicolored {
  CurveFamily blue, red;
};

/// Splits a family alternately: even positions blue, odd positions red.
inline Bicolored split_alternating(const CurveFamily& f) {
  std::vector<std::size_t> b, r;
  for (std::size_t i = 0; i < f.size(); ++i) (i % 2 ? r : b).push_back(i);
  return {f.subfamily(b), f.subfamily(r)};
}

/// n curves of each color from a curve generator run with 2n curves.
inline Bicolored generate_bicolored(GeneratorSpec spec) {
  spec.n *= 2;
  return split_alternating(generate_family(spec));
}

inline TopoGraph generate_graph(const GeneratorSpec& spec) {
  auto g = generate(spec);
  if (auto* t = std::get_if<TopoGraph>(&g)) return std::move(*t);
  throw Error(ErrorCode::ValidationError, "generator does not produce a graph");
}

inline std::vector<Point> generate_points(const GeneratorSpec& spec) {
  auto g = generate(spec);
  if (auto* p = std::get_if<std::vector<Point>>(&g)) return std::move(*p);
  throw Error(ErrorCode::ValidationError, "generator does not produce points");
}

}  // namespace mcd
