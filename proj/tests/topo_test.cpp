#include <gtest/gtest.h>

#include "mcd/generate.hpp"
#include "mcd/oracle.hpp"
#include "mcd/topo.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

mcd::TopoGraph straight(const std::vector<Point>& pts, const std::vector<std::pair<std::size_t, std::size_t>>& es) {
  mcd::TopoGraph g;
  for (std::size_t i = 0; i < pts.size(); ++i) g.vertices.push_back({"v" + std::to_string(i), pts[i]});
  for (std::size_t e = 0; e < es.size(); ++e)
    g.edges.push_back({"e" + std::to_string(e), es[e].first, es[e].second, {pts[es[e].first], pts[es[e].second]}});
  g.simple = true;
  return g;
}

mcd::TopoGraph graph(mcd::GeneratorKind kind, int n, std::uint64_t seed, int edges = 0, int max_k = 3) {
  mcd::GeneratorSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  s.edges = edges;
  s.max_k = max_k;
  return mcd::generate_graph(s);
}

/// Disjoint-pair count by the oracle's segment predicate.
std::size_t oracle_disjoint_pairs(const mcd::TopoGraph& g) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j)
      n += !g.edges[i].shares_vertex(g.edges[j]) && !mcd::oracle::polylines_touch(g.edges[i].pts, g.edges[j].pts);
  return n;
}

void expect_disjoint(const mcd::TopoGraph& g, const std::vector<std::size_t>& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      EXPECT_FALSE(g.edges[s[a]].shares_vertex(g.edges[s[b]]));
      EXPECT_FALSE(mcd::oracle::polylines_touch(g.edges[s[a]].pts, g.edges[s[b]].pts));
    }
}

}  // namespace

TEST(Relations, TriangleSharesEverything) {
  auto g = straight({P(0, 0), P(4, 0), P(0, 4)}, {{0, 1}, {1, 2}, {2, 0}});
  auto r = mcd::disjointness_relations(g);
  EXPECT_EQ(r.shared, 3u);
  EXPECT_EQ(r.disjoint, 0u);
  EXPECT_TRUE(mcd::thrackle_check(g).thrackle);
}

TEST(Relations, TwoSeparateSegments) {
  auto g = straight({P(0, 0), P(1, 0), P(0, 5), P(1, 5)}, {{0, 1}, {2, 3}});
  auto r = mcd::disjointness_relations(g);
  EXPECT_EQ(r.disjoint, 1u);
  EXPECT_EQ(r.disjoint_density(), 1);
  EXPECT_EQ(r.disjoint_density_ordered(), mcd::ratio(1, 2));
}

TEST(Relations, ConvexK5) {
  auto g = graph(mcd::GeneratorKind::ConvexComplete, 5, 1);
  auto r = mcd::disjointness_relations(g);
  // 45 pairs: 30 share a vertex, C(5,4) = 5 cross, the remaining 10 are disjoint.
  EXPECT_EQ(oracle_disjoint_pairs(g), 10u);
  EXPECT_EQ(r.disjoint, 10u);
  EXPECT_EQ(r.cross, 5u);
  EXPECT_EQ(r.shared, 30u);
}

TEST(Thrackle, PathOfSegmentsHasWitness) {
  auto g = straight({P(0, 0), P(1, 0), P(3, 0), P(4, 0), P(6, 0), P(7, 0)}, {{0, 1}, {2, 3}, {4, 5}});
  auto c = mcd::thrackle_check(g);
  EXPECT_FALSE(c.thrackle);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(*c.witness, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Thrackle, StarPolygonsAreThrackles) {
  for (int n : {5, 7, 9, 11}) {
    auto g = graph(mcd::GeneratorKind::StarThrackle, n, static_cast<std::uint64_t>(n));
    EXPECT_TRUE(mcd::thrackle_check(g).thrackle);
    EXPECT_LE(static_cast<double>(g.edges.size()), 1.43 * n);
    auto s = mcd::extract_disjoint_edges(g);
    EXPECT_EQ(s.edges.size(), 1u);
  }
}

TEST(ParityDelta, Examples) {
  EXPECT_EQ(mcd::parity_delta(1, 1), 1);
  EXPECT_EQ(mcd::parity_delta(1, 3), 3);
  EXPECT_EQ(mcd::parity_delta(3, 3), 9);
  EXPECT_THROW(mcd::parity_delta(0, 1), mcd::Error);
}

TEST(ParityDelta, OddForOddInputs) {
  for (long a = 1; a <= 15; a += 2)
    for (long b = 1; b <= 15; b += 2) EXPECT_EQ(mcd::parity_delta(a, b) % 2, 1) << a << "," << b;
}

TEST(OracleDisjointEdges, ConvexCompleteGraphs) {
  for (int n : {4, 6, 8}) {
    auto g = graph(mcd::GeneratorKind::ConvexComplete, n, 10 + n);
    auto s = mcd::oracle::max_disjoint_edges(g);
    EXPECT_EQ(s.size(), static_cast<std::size_t>(n / 2));
    expect_disjoint(g, s);
  }
}

TEST(ExtractDisjoint, ConvexCompleteGraphs) {
  for (int n : {4, 6, 8}) {
    auto g = graph(mcd::GeneratorKind::ConvexComplete, n, 10 + n);
    auto s = mcd::extract_disjoint_edges(g, {mcd::Constants{}, 3});
    expect_disjoint(g, s.edges);
    if (n >= 6) EXPECT_GE(s.edges.size(), 2u);
    if (g.edges.size() < 20) EXPECT_EQ(s.edges.size(), mcd::oracle::max_disjoint_edges(g).size());
  }
}

TEST(ExtractDisjoint, SmallGraphsMatchOracle) {
  for (int s = 0; s < 8; ++s) {
    auto g = graph(mcd::GeneratorKind::DenseBipartite, 6, 40 + s, 12 + s);
    auto got = mcd::extract_disjoint_edges(g);
    expect_disjoint(g, got.edges);
    EXPECT_EQ(got.edges.size(), mcd::oracle::max_disjoint_edges(g).size());
    EXPECT_EQ(got.trace.front().method, "exact");
  }
}

TEST(ExtractDisjoint, LargeStripGraphUsesDensitySplit) {
  auto g = graph(mcd::GeneratorKind::BipartiteStrip, 40, 7, 120);
  auto s = mcd::extract_disjoint_edges(g, {mcd::Constants{}, 7});
  expect_disjoint(g, s.edges);
  EXPECT_GE(s.edges.size(), 2u);
  EXPECT_EQ(s.trace.front().method, "density");
  EXPECT_GE(s.max_depth, 1);
}

TEST(ExtractDisjoint, SparseDisjointnessFallsBackToGreedy) {
  auto g = graph(mcd::GeneratorKind::ConvexComplete, 8, 3);
  mcd::DisjointConfig cfg;
  cfg.threshold = 1;
  auto s = mcd::extract_disjoint_edges(g, cfg);
  EXPECT_EQ(s.trace.front().method, "greedy");
  expect_disjoint(g, s.edges);
  EXPECT_GE(s.edges.size(), 2u);
}

TEST(Redraw, CrossingPairBecomesEven) {
  // b0, b1 below the strip, a0, a1 above; the edges cross once above.
  mcd::TopoGraph g;
  g.vertices = {{"b0", P(1, -3)}, {"b1", P(9, -3)}, {"a0", P(0, 5)}, {"a1", P(10, 5)}};
  g.edges = {{"e0", 0, 3, {P(1, -3), P(1, 0), P(1, 1), P(10, 5)}}, {"e1", 1, 2, {P(9, -3), P(9, 0), P(9, 1), P(0, 5)}}};
  auto [h, rep] = mcd::redraw_bipartite(g);
  ASSERT_EQ(rep.pairs.size(), 1u);
  EXPECT_EQ(rep.pairs[0].original, mcd::EdgeRelation::Cross);
  EXPECT_EQ(rep.pairs[0].new_count, 2u);
  EXPECT_EQ(mcd::oracle::common_point_count(h.edges[0].pts, h.edges[1].pts), 2);
  EXPECT_EQ(rep.ocn_upper_bound, 0u);
}

TEST(Redraw, DisjointPairCrossesOnceInTheStrip) {
  mcd::TopoGraph g;
  g.vertices = {{"b0", P(1, -3)}, {"b1", P(9, -3)}, {"a0", P(0, 5)}, {"a1", P(10, 5)}};
  g.edges = {{"e0", 0, 2, {P(1, -3), P(1, 0), P(1, 1), P(0, 5)}}, {"e1", 1, 3, {P(9, -3), P(9, 0), P(9, 1), P(10, 5)}}};
  auto [h, rep] = mcd::redraw_bipartite(g);
  EXPECT_EQ(rep.pairs[0].original, mcd::EdgeRelation::Disjoint);
  EXPECT_EQ(rep.pairs[0].new_count, static_cast<std::size_t>(mcd::parity_delta(1, 1)));
  EXPECT_EQ(rep.ocn_upper_bound, 1u);
  EXPECT_EQ(rep.odd_pairs, 1u);
}

TEST(Redraw, GeneratedStripGraphsKeepCrossingPairsEven) {
  int with_three = 0;
  for (int s = 0; s < 12; ++s) {
    auto g = graph(mcd::GeneratorKind::BipartiteStrip, 6, 500 + s, 10);
    auto [h, rep] = mcd::redraw_bipartite(g);
    auto rel = mcd::disjointness_relations(g);
    EXPECT_EQ(rep.ocn_upper_bound, rel.disjoint + rel.shared);
    EXPECT_EQ(rep.odd_pairs, rep.ocn_upper_bound);
    for (const auto& p : rep.pairs) {
      // Independent recount with the oracle's contact finder.
      int common = mcd::oracle::common_point_count(h.edges[p.e1].pts, h.edges[p.e2].pts);
      ASSERT_GE(common, 0);
      auto n = static_cast<std::size_t>(common) - (p.original == mcd::EdgeRelation::ShareVertex);
      EXPECT_EQ(n, p.new_count);
      EXPECT_EQ(n, static_cast<std::size_t>(rep.k[p.e1] * rep.k[p.e2]) + (p.original == mcd::EdgeRelation::Cross));
      if (p.original == mcd::EdgeRelation::Cross) EXPECT_EQ(n % 2, 0u);
    }
    for (const auto& e : h.edges) EXPECT_TRUE(mcd::is_simple_polyline(e.pts));
    for (long k : rep.k) with_three += k == 3;
  }
  EXPECT_GT(with_three, 0);
}

TEST(Redraw, RejectsDrawingsOutsideNormalForm) {
  auto g = graph(mcd::GeneratorKind::DenseBipartite, 4, 2, 5);
  try {
    mcd::redraw_bipartite(g);
    FAIL();
  } catch (const mcd::Error& e) {
    EXPECT_EQ(e.code(), mcd::ErrorCode::NotNormalForm);
  }
}

TEST(StripNormalForm, StraightBipartiteGetsOneTraversalPerEdge) {
  for (int s = 0; s < 5; ++s) {
    auto g = graph(mcd::GeneratorKind::DenseBipartite, 6, 60 + s, 12);
    auto h = mcd::to_strip_normal_form(g);
    EXPECT_EQ(mcd::disjointness_relations(h).table, mcd::disjointness_relations(g).table);
    auto [r, rep] = mcd::redraw_bipartite(h);
    for (long k : rep.k) EXPECT_EQ(k, 1);
  }
}

TEST(StripNormalForm, NormalFormIsLeftAlone) {
  auto g = graph(mcd::GeneratorKind::BipartiteStrip, 5, 8, 8);
  auto h = mcd::to_strip_normal_form(g);
  for (std::size_t e = 0; e < g.edges.size(); ++e) EXPECT_EQ(h.edges[e].pts, g.edges[e].pts);
}

TEST(StripNormalForm, WavyDrawingsReachNormalForm) {
  int with_three = 0;
  for (int s = 0; s < 8; ++s) {
    auto g = graph(mcd::GeneratorKind::WavyBipartite, 6, 80 + s, 10);
    auto h = mcd::to_strip_normal_form(g);
    EXPECT_TRUE(mcd::is_strip_normal_form(h));
    EXPECT_EQ(mcd::disjointness_relations(h).table, mcd::disjointness_relations(g).table);
    auto [r, rep] = mcd::redraw_bipartite(h);
    for (long k : rep.k) with_three += k == 3;
  }
  EXPECT_GT(with_three, 0);
}

TEST(StripNormalForm, OverlappingClassesAreNotSeparable) {
  auto g = straight({P(0, 0), P(2, 3), P(4, 1), P(6, 2)}, {{0, 1}, {2, 3}});
  g.vertices[3].p = P(6, -1);
  g.edges[1].pts.back() = P(6, -1);
  // Upper ends at y = 3 and y = 1, lower ends at 0 and -1: fine. Now raise a
  // lower end above an upper one.
  g.vertices[0].p = P(0, 2);
  g.edges[0].pts.front() = P(0, 2);
  try {
    mcd::to_strip_normal_form(g);
    FAIL();
  } catch (const mcd::Error& e) {
    EXPECT_EQ(e.code(), mcd::ErrorCode::NotSeparable);
  }
}

namespace {

/// Minimum balanced cut by enumerating every vertex subset.
std::size_t brute_bisection(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& es) {
  std::size_t best = SIZE_MAX, lo = (n + 2) / 3, hi = 2 * n / 3;
  for (unsigned m = 0; m < (1u << n); ++m) {
    auto size = static_cast<std::size_t>(__builtin_popcount(m));
    if (size < lo || size > hi) continue;
    std::size_t cut = 0;
    for (auto [u, v] : es) cut += (m >> u & 1) != (m >> v & 1);
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace

TEST(Bisection, Examples) {
  std::vector<std::pair<std::size_t, std::size_t>> cliques;
  for (std::size_t base : {0u, 5u})
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) cliques.emplace_back(base + i, base + j);
  cliques.emplace_back(4, 5);
  EXPECT_EQ(mcd::heuristic_bisection(10, cliques, 1).cut, 1u);

  std::vector<std::pair<std::size_t, std::size_t>> star;
  for (std::size_t i = 1; i <= 5; ++i) star.emplace_back(0, i);
  auto b = mcd::heuristic_bisection(6, star, 2);
  EXPECT_EQ(b.cut, brute_bisection(6, star));
  EXPECT_EQ(b.cut, 2u);
  EXPECT_GE(b.v1.size(), 2u);
  EXPECT_LE(b.v1.size(), 4u);

  std::vector<std::pair<std::size_t, std::size_t>> path;
  for (std::size_t i = 0; i + 1 < 6; ++i) path.emplace_back(i, i + 1);
  EXPECT_EQ(mcd::heuristic_bisection(6, path, 3).cut, 1u);
}

TEST(Bisection, RandomGraphsAreBalancedAndLocallyMinimal) {
  for (int s = 0; s < 10; ++s) {
    mcd::Rng rng(s);
    std::size_t n = 8 + static_cast<std::size_t>(s % 5);
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng.bernoulli(1, 3)) es.emplace_back(u, v);
    auto b = mcd::heuristic_bisection(n, es, static_cast<std::uint64_t>(s));
    EXPECT_GE(b.v1.size(), (n + 2) / 3);
    EXPECT_LE(b.v1.size(), 2 * n / 3);
    EXPECT_GE(b.cut, brute_bisection(n, es));
    std::vector<int> side(n, 1);
    for (auto v : b.v1) side[v] = 0;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t s0 = b.v1.size() + (side[x] ? 1 : 0) - (side[x] ? 0 : 1);
      if (s0 < (n + 2) / 3 || s0 > 2 * n / 3) continue;
      side[x] ^= 1;
      std::size_t cut = 0;
      for (auto [u, v] : es) cut += side[u] != side[v];
      side[x] ^= 1;
      EXPECT_GE(cut, b.cut);
    }
  }
}
