#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcd/constants.hpp"
#include "mcd/curve.hpp"
#include "mcd/density.hpp"
#include "mcd/graph.hpp"
#include "mcd/random.hpp"

namespace mcd {

enum class EdgeRelation { Cross, ShareVertex, Disjoint };

inline const char* to_string(EdgeRelation r) {
  switch (r) {
    case EdgeRelation::Cross: return "cross";
    case EdgeRelation::ShareVertex: return "share-vertex";
    case EdgeRelation::Disjoint: return "disjoint";
  }
  return "?";
}

inline EdgeRelation edge_relation(const TopoEdge& a, const TopoEdge& b) {
  if (a.shares_vertex(b)) return EdgeRelation::ShareVertex;
  return polylines_meet(a.pts, b.pts) ? EdgeRelation::Cross : EdgeRelation::Disjoint;
}

struct PairRelations {
  std::size_t m = 0;
  std::vector<EdgeRelation> table;  // m x m, diagonal unused
  std::size_t cross = 0, shared = 0, disjoint = 0;

  EdgeRelation operator()(std::size_t i, std::size_t j) const { return table[i * m + j]; }
  std::size_t pairs() const { return m * (m - 1) / 2; }
  /// Disjoint pairs over unordered pairs, and over all m^2 ordered slots.
  Rational disjoint_density() const { return pairs() ? ratio(static_cast<long>(disjoint), static_cast<long>(pairs())) : Rational(0); }
  Rational disjoint_density_ordered() const {
    return m ? ratio(static_cast<long>(2 * disjoint), static_cast<long>(m * m)) : Rational(0);
  }
};

inline PairRelations disjointness_relations(const TopoGraph& g) {
  PairRelations r;
  r.m = g.edges.size();
  r.table.assign(r.m * r.m, EdgeRelation::ShareVertex);
  for (std::size_t i = 0; i < r.m; ++i)
    for (std::size_t j = i + 1; j < r.m; ++j) {
      EdgeRelation e = edge_relation(g.edges[i], g.edges[j]);
      r.table[i * r.m + j] = r.table[j * r.m + i] = e;
      (e == EdgeRelation::Cross ? r.cross : e == EdgeRelation::ShareVertex ? r.shared : r.disjoint)++;
    }
  return r;
}

struct ThrackleCheck {
  bool thrackle = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // a disjoint pair
};

inline ThrackleCheck thrackle_check(const TopoGraph& g) {
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j)
      if (edge_relation(g.edges[i], g.edges[j]) == EdgeRelation::Disjoint) return {false, std::pair{i, j}};
  return {};
}

/// Crossings inside the strip between two edges traversing it k1 and k2
/// times once all traversals pairwise cross: C(k1+k2,2) - C(k1,2) - C(k2,2).
inline long parity_delta(long k1, long k2) {
  if (k1 < 1 || k2 < 1) throw Error(ErrorCode::ValidationError, "traversal counts must be positive");
  auto c2 = [](long k) { return k * (k - 1) / 2; };
  return c2(k1 + k2) - c2(k1) - c2(k2);
}

// ---------------------------------------------------------------------------
// Disjoint edges

struct DisjointTraceNode {
  int depth = 0;
  std::size_t edges = 0;
  std::string method;  // "exact", "density", "greedy"
  std::size_t result = 0;
  std::string note;
};

struct DisjointEdgeSet {
  std::vector<std::size_t> edges;  // indices into g.edges, sorted
  std::vector<DisjointTraceNode> trace;
  int max_depth = 0;
};

struct DisjointConfig {
  Constants k;
  std::uint64_t seed = 0;
  Rational threshold = ratio(1, 10);  // disjoint-pair density that triggers the density split
};

inline bool verify_disjoint_set(const TopoGraph& g, const std::vector<std::size_t>& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (edge_relation(g.edges[s[a]], g.edges[s[b]]) != EdgeRelation::Disjoint) return false;
  return true;
}

namespace detail {

using Conflicts = std::vector<std::vector<bool>>;

inline Conflicts conflicts_of(const PairRelations& rel, const std::vector<std::size_t>& s) {
  Conflicts c(s.size(), std::vector<bool>(s.size(), false));
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      c[a][b] = a != b && rel(s[a], s[b]) != EdgeRelation::Disjoint;
  return c;
}

/// Maximum independent set of the conflict graph by branch and bound.
inline std::vector<std::size_t> exact_disjoint(const PairRelations& rel, const std::vector<std::size_t>& s) {
  if (s.size() > 64) throw Error(ErrorCode::TooLarge, "exact disjoint-edge search is limited to 64 edges");
  Conflicts c = conflicts_of(rel, s);
  std::vector<std::uint64_t> mask(s.size(), 0);
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (c[a][b]) mask[a] |= std::uint64_t{1} << b;
  std::uint64_t best = 0;
  auto rec = [&](auto&& self, std::uint64_t chosen, std::uint64_t cand) -> void {
    if (std::popcount(chosen) + std::popcount(cand) <= std::popcount(best)) return;
    if (!cand) {
      best = chosen;
      return;
    }
    int v = std::countr_zero(cand);
    std::uint64_t bit = std::uint64_t{1} << v;
    self(self, chosen | bit, cand & ~bit & ~mask[static_cast<std::size_t>(v)]);
    self(self, chosen, cand & ~bit);
  };
  std::uint64_t all = s.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.size()) - 1;
  rec(rec, 0, all);
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < s.size(); ++a)
    if (best >> a & 1) out.push_back(s[a]);
  return out;
}

/// Repeatedly takes the edge with the fewest conflicts among the remaining.
inline std::vector<std::size_t> greedy_disjoint(const PairRelations& rel, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> left = s, out;
  while (!left.empty()) {
    std::size_t best = 0, best_deg = SIZE_MAX;
    for (std::size_t a = 0; a < left.size(); ++a) {
      std::size_t deg = 0;
      for (auto b : left) deg += b != left[a] && rel(left[a], b) != EdgeRelation::Disjoint;
      if (deg < best_deg) {
        best = a;
        best_deg = deg;
      }
    }
    std::size_t e = left[best];
    out.push_back(e);
    std::erase_if(left, [&](std::size_t b) { return b == e || rel(e, b) != EdgeRelation::Disjoint; });
  }
  return out;
}

/// First parameter on the segment a -> b (measured from a) at which another
/// edge meets it, ignoring the point a itself; 1 if there is none.
inline Rational first_contact(const TopoGraph& g, std::size_t self, const Point& a, const Point& b) {
  Rational best(1);
  for (std::size_t o = 0; o < g.edges.size(); ++o) {
    if (o == self) continue;
    const auto& pts = g.edges[o].pts;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      SegmentMeet m = meet_segments(a, b, pts[s], pts[s + 1]);
      if (m.kind == SegmentRelation::Disjoint || m.p == a) continue;
      Rational t = a.x != b.x ? Rational((m.p.x - a.x) / (b.x - a.x)) : Rational((m.p.y - a.y) / (b.y - a.y));
      best = std::min(best, t);
    }
  }
  return best;
}

/// Edge curves as a curve family: ends pulled back from the vertices so
/// adjacent edges separate, then sheared so no piece is vertical. Crossing
/// pairs keep their crossing; the rest become disjoint.
inline CurveFamily edge_family(const TopoGraph& g, const std::vector<std::size_t>& s, std::uint64_t seed) {
  TopoGraph sub;
  sub.vertices = g.vertices;
  for (auto e : s) sub.edges.push_back(g.edges[e]);
  std::vector<Polyline> trimmed;
  for (std::size_t i = 0; i < sub.edges.size(); ++i) {
    Polyline pts = sub.edges[i].pts;
    std::size_t n = pts.size();
    Rational head = std::min(Rational(ratio(1, 4)), Rational(first_contact(sub, i, pts[0], pts[1]) / 2));
    Rational tail = std::min(Rational(ratio(1, 4)), Rational(first_contact(sub, i, pts[n - 1], pts[n - 2]) / 2));
    Point p0 = lerp(pts[0], pts[1], head);
    Point pn = lerp(pts[n - 1], pts[n - 2], tail);
    pts.front() = p0;
    pts.back() = pn;
    trimmed.push_back(std::move(pts));
  }
  Rational lambda(0);
  for (long d = 7;; d += 6) {
    bool ok = true;
    for (const auto& pts : trimmed)
      for (std::size_t i = 0; i + 1 < pts.size() && ok; ++i)
        ok = (pts[i + 1].x - pts[i].x) + lambda * (pts[i + 1].y - pts[i].y) != 0;
    if (ok) break;
    lambda = ratio(1, d);
  }
  std::vector<TMonotoneCurve> curves;
  for (std::size_t i = 0; i < trimmed.size(); ++i) {
    Polyline pts = trimmed[i];
    for (auto& p : pts) p.x += lambda * p.y;
    int t = detail::count_reversals(pts) + 1;
    curves.emplace_back(sub.edges[i].id, std::move(pts), t);
  }
  return perturb_to_general_position(CurveFamily::from(std::move(curves)), seed);
}

/// Drops edges until no member of `a` shares a vertex with a member of `b`,
/// always removing the edge with the most such conflicts.
inline void separate_vertices(const TopoGraph& g, std::vector<std::size_t>& a, std::vector<std::size_t>& b) {
  for (;;) {
    std::size_t worst = SIZE_MAX, worst_deg = 0;
    bool in_a = true;
    auto scan = [&](const std::vector<std::size_t>& mine, const std::vector<std::size_t>& theirs, bool side) {
      for (std::size_t x = 0; x < mine.size(); ++x) {
        std::size_t deg = 0;
        for (auto y : theirs) deg += g.edges[mine[x]].shares_vertex(g.edges[y]);
        if (deg > worst_deg) {
          worst = x;
          worst_deg = deg;
          in_a = side;
        }
      }
    };
    scan(a, b, true);
    scan(b, a, false);
    if (worst == SIZE_MAX) return;
    auto& v = in_a ? a : b;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(worst));
  }
}

inline std::vector<std::size_t> extract_rec(const TopoGraph& g, const PairRelations& rel, std::vector<std::size_t> s,
                                            const DisjointConfig& cfg, int depth, std::uint64_t& node,
                                            DisjointEdgeSet& out) {
  out.max_depth = std::max(out.max_depth, depth);
  DisjointTraceNode t{depth, s.size(), "", 0, ""};
  std::size_t at = out.trace.size();
  out.trace.push_back(t);
  std::vector<std::size_t> result;
  if (static_cast<long>(s.size()) < cfg.k.m0) {
    result = exact_disjoint(rel, s);
    out.trace[at].method = "exact";
  } else {
    std::size_t dis = 0;
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) dis += rel(s[a], s[b]) == EdgeRelation::Disjoint;
    Rational density = ratio(static_cast<long>(dis), static_cast<long>(s.size() * (s.size() - 1) / 2));
    std::uint64_t id = node++;
    if (density >= cfg.threshold) {
      try {
        std::uint64_t seed = derive_seed(cfg.seed, stream::kTopo, static_cast<std::uint64_t>(depth), id);
        CurveFamily f = edge_family(g, s, seed);
        DensityCertificate c = extract(f, Mode::Disjoint, cfg.k, seed);
        std::vector<std::size_t> a, b;
        for (auto i : c.f1) a.push_back(s[i]);
        for (auto j : c.f2) b.push_back(s[j]);
        separate_vertices(g, a, b);
        if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySide, "vertex separation emptied a side");
        out.trace[at].method = "density";
        out.trace[at].note = std::to_string(a.size()) + "+" + std::to_string(b.size());
        result = extract_rec(g, rel, a, cfg, depth + 1, node, out);
        auto rb = extract_rec(g, rel, b, cfg, depth + 1, node, out);
        result.insert(result.end(), rb.begin(), rb.end());
      } catch (const Error& e) {
        out.trace[at].note = std::string("density split failed: ") + to_string(e.code());
      }
    }
    if (out.trace[at].method.empty()) {
      result = greedy_disjoint(rel, s);
      out.trace[at].method = "greedy";
    }
  }
  out.trace[at].result = result.size();
  return result;
}

}  // namespace detail

/// Pairwise disjoint edges: exact below m0 edges, otherwise split by a
/// disjoint-mode density certificate on the edge curves and recurse, or
/// greedy when disjoint pairs are too sparse. The union is topped up
/// greedily and verified pairwise.
inline DisjointEdgeSet extract_disjoint_edges(const TopoGraph& g, const DisjointConfig& cfg = {}) {
  DisjointEdgeSet out;
  if (g.edges.empty()) return out;
  PairRelations rel = disjointness_relations(g);
  std::vector<std::size_t> all(g.edges.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::uint64_t node = 0;
  std::vector<std::size_t> s = detail::extract_rec(g, rel, all, cfg, 0, node, out);
  for (auto e : all)
    if (std::find(s.begin(), s.end(), e) == s.end() &&
        std::all_of(s.begin(), s.end(), [&](std::size_t x) { return rel(e, x) == EdgeRelation::Disjoint; }))
      s.push_back(e);
  std::sort(s.begin(), s.end());
  if (!verify_disjoint_set(g, s)) throw Error(ErrorCode::CaseAnalysisBreach, "disjoint edge set failed verification");
  out.edges = std::move(s);
  return out;
}

// ---------------------------------------------------------------------------
// Strip redrawing

/// Number of crossing points of two edges, not counting a common vertex.
inline std::size_t crossing_count(const TopoGraph& g, const TopoEdge& a, const TopoEdge& b) {
  std::optional<Point> shared;
  if (a.u == b.u || a.u == b.v) shared = g.vertices[a.u].p;
  if (a.v == b.u || a.v == b.v) shared = g.vertices[a.v].p;
  std::size_t n = 0;
  for (const auto& c : polyline_contacts(a.pts, b.pts)) n += !shared || c.p != *shared;
  return n;
}

/// Points where non-adjacent pieces of a polyline meet, as (segment, segment, point).
struct SelfMeet {
  std::size_t i, j;
  Point p;
};

inline std::vector<SelfMeet> self_meets(const Polyline& pts) {
  std::vector<SelfMeet> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t j = i + 2; j + 1 < pts.size(); ++j) {
      SegmentMeet m = meet_segments(pts[i], pts[i + 1], pts[j], pts[j + 1]);
      if (m.kind == SegmentRelation::Overlap) throw Error(ErrorCode::DegenerateOverlap, "edge overlaps itself");
      if (m.kind == SegmentRelation::Point) out.push_back({i, j, m.p});
    }
  return out;
}

namespace detail {

struct StripTraversal {
  std::size_t segment;  // index of the vertical piece inside the edge polyline
  Rational x;
};

/// Vertical strip pieces of every edge; throws NotNormalForm on anything else
/// entering the strip.
inline std::vector<std::vector<StripTraversal>> strip_traversals(const TopoGraph& g) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::NotNormalForm, why); };
  for (const auto& v : g.vertices)
    if (v.p.y >= 0 && v.p.y <= 1) fail("vertex " + v.id + " lies in the strip");
  std::set<Rational> xs;
  std::vector<std::vector<StripTraversal>> out;
  for (const auto& e : g.edges) {
    bool up = g.vertices[e.u].p.y > 1, vp = g.vertices[e.v].p.y > 1;
    if (up == vp) fail("edge " + e.id + " does not join the two classes");
    std::vector<StripTraversal> ts;
    for (std::size_t s = 0; s + 1 < e.pts.size(); ++s) {
      const Point &a = e.pts[s], &b = e.pts[s + 1];
      bool above = a.y >= 1 && b.y >= 1, below = a.y <= 0 && b.y <= 0;
      bool vertical = a.x == b.x && ((a.y == 0 && b.y == 1) || (a.y == 1 && b.y == 0));
      if (vertical) {
        if (!xs.insert(a.x).second) fail("edge " + e.id + " shares a strip abscissa");
        ts.push_back({s, a.x});
      } else if (!above && !below) {
        fail("edge " + e.id + " enters the strip off a vertical");
      }
    }
    // Every point on a strip boundary must be the end of a vertical piece.
    for (std::size_t s = 0; s < e.pts.size(); ++s) {
      if (e.pts[s].y != 0 && e.pts[s].y != 1) continue;
      bool attached = std::any_of(ts.begin(), ts.end(), [&](const StripTraversal& t) { return t.segment == s || t.segment + 1 == s; });
      if (!attached) fail("edge " + e.id + " touches the strip boundary");
    }
    out.push_back(std::move(ts));
  }
  return out;
}

/// Replaces the self-meeting at (i, j, p) by the smoothing that keeps one
/// curve: the loop between the two visits is traversed backwards.
inline Polyline smooth_self_meet(const Polyline& pts, const SelfMeet& m, const Rational& sigma) {
  Polyline out(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(m.i) + 1);
  out.push_back(lerp(m.p, pts[m.i], sigma));
  out.push_back(lerp(m.p, pts[m.j], sigma));
  for (std::size_t k = m.j; k > m.i; --k) out.push_back(pts[k]);
  out.push_back(lerp(m.p, pts[m.i + 1], sigma));
  out.push_back(lerp(m.p, pts[m.j + 1], sigma));
  out.insert(out.end(), pts.begin() + static_cast<std::ptrdiff_t>(m.j) + 1, pts.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

struct RedrawPair {
  std::size_t e1, e2;
  EdgeRelation original;
  std::size_t new_count;
  bool even;
};

struct RedrawReport {
  std::vector<long> k;  // strip traversals per edge
  std::vector<RedrawPair> pairs;
  std::size_t ocn_upper_bound = 0;  // disjoint + shared-vertex pairs
  std::size_t odd_pairs = 0;        // measured in the new drawing
  std::size_t reroutes = 0;         // self-meetings removed
};

/// Reflects the part above the strip through x -> -x, joins each vertical's
/// ends by a straight piece (so every two traversals cross once), removes the
/// resulting self-crossings and audits the crossing parities.
inline std::pair<TopoGraph, RedrawReport> redraw_bipartite(const TopoGraph& g) {
  auto trav = detail::strip_traversals(g);
  RedrawReport rep;
  for (const auto& t : trav) rep.k.push_back(static_cast<long>(t.size()));
  const std::size_t m = g.edges.size();
  PairRelations rel = disjointness_relations(g);

  TopoGraph h;
  h.vertices = g.vertices;
  for (auto& v : h.vertices)
    if (v.p.y > 1) v.p.x = -v.p.x;

  std::size_t total = 0;
  for (const auto& t : trav) total += t.size();
  // The straight pieces would all pass through (0, 1/2); a short vertical
  // stub of distinct height at each bottom end separates them.
  Rational delta = ratio(1, 4 * static_cast<long>(total + 1));
  for (int attempt = 0;; ++attempt, delta /= 2) {
    if (attempt == 40) throw Error(ErrorCode::SafeRadiusZero, "no stub height separates the strip pieces");
    h.edges.clear();
    std::size_t idx = 0;
    for (std::size_t e = 0; e < m; ++e) {
      const auto& src = g.edges[e];
      Polyline pts;
      std::size_t next = 0;
      for (std::size_t s = 0; s < src.pts.size(); ++s) {
        Point p = src.pts[s];
        bool strip_start = next < trav[e].size() && trav[e][next].segment == s;
        if (strip_start) {
          const Point& q = src.pts[s + 1];
          Rational stub = delta * static_cast<long>(++idx);
          Point lo = p.y == 0 ? p : q;
          Point bottom{lo.x, 0}, raised{lo.x, stub}, top{-lo.x, 1};
          if (p.y == 0) pts.insert(pts.end(), {bottom, raised, top});
          else pts.insert(pts.end(), {top, raised, bottom});
          ++s;  // the far end of the vertical is already placed
          ++next;
          continue;
        }
        if (p.y >= 1) p.x = -p.x;
        pts.push_back(p);
      }
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      h.edges.push_back({src.id, src.u, src.v, std::move(pts)});
    }
    bool ok = true;
    for (std::size_t e = 0; e < m && ok; ++e) {
      long k = rep.k[e];
      ok = static_cast<long>(self_meets(h.edges[e].pts).size()) == k * (k - 1) / 2;
    }
    for (std::size_t a = 0; a < m && ok; ++a)
      for (std::size_t b = a + 1; b < m && ok; ++b) {
        long expect = rep.k[a] * rep.k[b] + (rel(a, b) == EdgeRelation::Cross);
        ok = static_cast<long>(crossing_count(h, h.edges[a], h.edges[b])) == expect;
      }
    if (ok) break;
  }

  std::vector<std::vector<std::size_t>> counts(m, std::vector<std::size_t>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) counts[a][b] = counts[b][a] = crossing_count(h, h.edges[a], h.edges[b]);

  for (std::size_t e = 0; e < m; ++e) {
    for (;;) {
      auto meets = self_meets(h.edges[e].pts);
      if (meets.empty()) break;
      const SelfMeet& sm = meets.front();
      const Polyline& pts = h.edges[e].pts;
      if (sm.p == pts[sm.i] || sm.p == pts[sm.i + 1] || sm.p == pts[sm.j] || sm.p == pts[sm.j + 1])
        throw Error(ErrorCode::CaseAnalysisBreach, "self-meeting at a polyline vertex of " + h.edges[e].id);
      bool done = false;
      for (Rational sigma = ratio(1, 4); !done && sigma > ratio(1, 1L << 40); sigma /= 2) {
        TopoEdge cand = h.edges[e];
        cand.pts = detail::smooth_self_meet(pts, sm, sigma);
        if (self_meets(cand.pts).size() + 1 != meets.size()) continue;
        bool same = true;
        for (std::size_t o = 0; o < m && same; ++o)
          if (o != e) same = crossing_count(h, cand, h.edges[o]) == counts[e][o];
        if (!same) continue;
        h.edges[e] = std::move(cand);
        ++rep.reroutes;
        done = true;
      }
      if (!done) throw Error(ErrorCode::SafeRadiusZero, "no local reroute removes a self-crossing of " + h.edges[e].id);
    }
  }

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      std::size_t c = counts[a][b];
      rep.pairs.push_back({a, b, rel(a, b), c, c % 2 == 0});
      rep.odd_pairs += c % 2;
      if (rel(a, b) == EdgeRelation::Cross && c % 2)
        throw Error(ErrorCode::CaseAnalysisBreach, "crossing pair " + g.edges[a].id + "/" + g.edges[b].id + " became odd");
    }
  rep.ocn_upper_bound = rel.disjoint + rel.shared;
  h.simple = false;
  return {std::move(h), std::move(rep)};
}

inline bool is_strip_normal_form(const TopoGraph& g) {
  try {
    detail::strip_traversals(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Brings a bipartite drawing whose classes are separated by a horizontal
/// band into strip normal form. Inside a slab free of polyline vertices and
/// crossings every edge piece is a straight traversal and their order is the
/// same on both sides, so each traversal can be bent into a vertical plus a
/// non-crossing connector. The band is then rescaled to [0, 1].
inline TopoGraph to_strip_normal_form(const TopoGraph& g) {
  if (is_strip_normal_form(g)) return g;
  const std::size_t nv = g.vertices.size();
  std::vector<int> side(nv, -1);  // 1 above, 0 below
  std::vector<std::vector<std::size_t>> adj(nv);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (std::size_t s = 0; s < nv; ++s) {
    if (side[s] != -1 || adj[s].empty()) continue;
    std::vector<std::size_t> comp{s};
    side[s] = 0;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (auto w : adj[comp[k]]) {
        if (side[w] == -1) {
          side[w] = 1 - side[comp[k]];
          comp.push_back(w);
        } else if (side[w] == side[comp[k]]) {
          throw Error(ErrorCode::NotSeparable, "graph is not bipartite");
        }
      }
    // Orient the component so that its colour 1 is the upper class.
    const auto& e0 = g.edges[std::find_if(g.edges.begin(), g.edges.end(), [&](const TopoEdge& e) { return e.u == s || e.v == s; }) - g.edges.begin()];
    std::size_t hi = g.vertices[e0.u].p.y > g.vertices[e0.v].p.y ? e0.u : e0.v;
    if (side[hi] == 0)
      for (auto w : comp) side[w] = 1 - side[w];
  }
  std::optional<Rational> min_a, max_b;
  for (std::size_t v = 0; v < nv; ++v) {
    const Rational& y = g.vertices[v].p.y;
    if (side[v] == 1 && (!min_a || y < *min_a)) min_a = y;
    if (side[v] == 0 && (!max_b || y > *max_b)) max_b = y;
  }
  if (!min_a || !max_b || *min_a <= *max_b) throw Error(ErrorCode::NotSeparable, "classes are not separated by a horizontal band");

  std::set<Rational> critical{*min_a, *max_b};
  auto keep = [&](const Rational& y) {
    if (y > *max_b && y < *min_a) critical.insert(y);
  };
  for (const auto& v : g.vertices) keep(v.p.y);
  for (const auto& e : g.edges)
    for (const auto& p : e.pts) keep(p.y);
  for (std::size_t a = 0; a < g.edges.size(); ++a)
    for (std::size_t b = a + 1; b < g.edges.size(); ++b)
      for (const auto& c : polyline_contacts(g.edges[a].pts, g.edges[b].pts)) keep(c.p.y);
  Rational lo, hi, width(-1);
  for (auto it = critical.begin(); std::next(it) != critical.end(); ++it) {
    Rational w = *std::next(it) - *it;
    if (w > width) {
      width = w;
      lo = *it;
      hi = *std::next(it);
    }
  }
  const Rational s0 = lo + width / 4, s1 = hi - width / 4, mid = (s0 + s1) / 2;
  auto x_at = [](const Point& a, const Point& b, const Rational& y) -> Rational {
    return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
  };
  auto scale = [&](Point p) {
    p.y = (p.y - mid) / (s1 - mid);
    return p;
  };

  TopoGraph out;
  out.vertices = g.vertices;
  for (std::size_t v = 0; v < nv; ++v) {
    bool above = side[v] == 1 || (side[v] == -1 && g.vertices[v].p.y > mid);
    if (above != (g.vertices[v].p.y > s1)) throw Error(ErrorCode::NotSeparable, "isolated vertex inside the band");
    out.vertices[v].p = scale(g.vertices[v].p);
  }
  for (const auto& e : g.edges) {
    Polyline pts{e.pts.front()};
    for (std::size_t s = 0; s + 1 < e.pts.size(); ++s) {
      const Point &a = e.pts[s], &b = e.pts[s + 1];
      bool up = a.y < s0 && b.y > s1, down = a.y > s1 && b.y < s0;
      if (up || down) {
        Point bottom{x_at(a, b, s0), s0}, top{x_at(a, b, s1), s1};
        Point bend{top.x, mid};
        if (up) pts.insert(pts.end(), {bottom, bend, top});
        else pts.insert(pts.end(), {top, bend, bottom});
      }
      pts.push_back(b);
    }
    for (auto& p : pts) p = scale(p);
    out.edges.push_back({e.id, e.u, e.v, std::move(pts)});
  }
  GraphCheck c = check_graph(out);
  out.simple = c.valid && c.simple;
  if (!c.valid || disjointness_relations(out).table != disjointness_relations(g).table)
    throw Error(ErrorCode::RelationChanged, "normalization changed the crossing relation");
  if (!is_strip_normal_form(out)) throw Error(ErrorCode::NotNormalForm, "normalized drawing is not in strip normal form");
  return out;
}

// ---------------------------------------------------------------------------
// Bisection

struct Bisection {
  std::vector<std::size_t> v1, v2;
  std::size_t cut = 0;
};

/// Balanced cut (each side between ceil(n/3) and floor(2n/3) vertices) by
/// seeded restarts of single-move and swap local search.
inline Bisection heuristic_bisection(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                     std::uint64_t seed, int restarts = 16) {
  if (n < 3) throw Error(ErrorCode::ValidationError, "bisection needs at least three vertices");
  const std::size_t lo = (n + 2) / 3, hi = 2 * n / 3;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorCode::ValidationError, "edge endpoint out of range");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  auto cut_of = [&](const std::vector<int>& s) {
    std::size_t c = 0;
    for (auto [u, v] : edges) c += s[u] != s[v];
    return c;
  };
  // Change of the cut when x moves to the other side.
  auto gain = [&](const std::vector<int>& s, std::size_t x) {
    long g = 0;
    for (auto w : adj[x]) g += s[w] != s[x] ? 1 : -1;
    return g;
  };
  std::optional<Bisection> best;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, stream::kTopo, 99, static_cast<std::uint64_t>(r)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    std::vector<int> s(n, 1);
    for (std::size_t k = 0; k < n / 2; ++k) s[order[k]] = 0;
    std::size_t size0 = n / 2;
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t x = 0; x < n && !improved; ++x) {
        std::size_t new0 = s[x] == 0 ? size0 - 1 : size0 + 1;
        if (new0 < lo || new0 > hi || gain(s, x) <= 0) continue;
        size0 = new0;
        s[x] = 1 - s[x];
        improved = true;
      }
      for (std::size_t x = 0; x < n && !improved; ++x)
        for (std::size_t y = x + 1; y < n && !improved; ++y) {
          if (s[x] == s[y]) continue;
          long g = gain(s, x) + gain(s, y);
          for (auto w : adj[x]) g -= w == y ? 2 : 0;
          if (g <= 0) continue;
          std::swap(s[x], s[y]);
          improved = true;
        }
    }
    Bisection b;
    for (std::size_t x = 0; x < n; ++x) (s[x] == 0 ? b.v1 : b.v2).push_back(x);
    b.cut = cut_of(s);
    if (!best || b.cut < best->cut) best = std::move(b);
  }
  return *best;
}

inline Bisection heuristic_bisection(const TopoGraph& g, std::uint64_t seed, int restarts = 16) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : g.edges) edges.emplace_back(e.u, e.v);
  return heuristic_bisection(g.vertices.size(), edges, seed, restarts);
}

}  // namespace mcd
