#include <gtest/gtest.h>

#include "mcd/density.hpp"
#include "mcd/generate.hpp"
#include "mcd/oracle.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

mcd::CurveFamily make(mcd::GeneratorKind kind, int n, std::uint64_t seed = 0, int length = 20) {
  mcd::GeneratorSpec g;
  g.kind = kind;
  g.n = n;
  g.seed = seed;
  g.length = length;
  return mcd::generate_family(g);
}

std::vector<mcd::Polyline> polylines(const mcd::CurveFamily& f) {
  std::vector<mcd::Polyline> out;
  for (const auto& c : f.curves) out.push_back(c.vertices());
  return out;
}

mcd::Block range(std::size_t lo, std::size_t hi) {
  mcd::Block b;
  for (std::size_t i = lo; i < hi; ++i) b.push_back(i);
  return b;
}

void expect_oracle_relation(const mcd::CurveFamily& f, const mcd::DensityCertificate& c) {
  ASSERT_FALSE(c.f1.empty());
  ASSERT_FALSE(c.f2.empty());
  for (auto i : c.f1)
    for (auto j : c.f2) {
      EXPECT_NE(i, j);
      EXPECT_EQ(mcd::oracle::polylines_touch(f[i].points(), f[j].points()), c.mode == mcd::Mode::Crossing);
    }
}

void expect_increasing_trace(const mcd::DensityCertificate& c) {
  for (std::size_t k = 0; k + 1 < c.trace.size(); ++k) {
    EXPECT_EQ(c.trace[k].outcome, "increment");
    EXPECT_GT(c.trace[k + 1].density, c.trace[k].density);
    long cu = c.trace[k].c_used;
    // Factor guaranteed by the increment step.
    EXPECT_GE(c.trace[k + 1].density * (1 - mcd::ratio(1, cu * cu)), c.trace[k].density);
  }
}

}  // namespace

TEST(PairDensity, AllCrossingHalvesIsOne) {
  auto f = make(mcd::GeneratorKind::AllCrossing, 10);
  mcd::ModeRelation rel(f, mcd::Mode::Crossing);
  EXPECT_EQ(mcd::pair_density(rel, range(0, 5), range(5, 10)), 1);
}

TEST(PairDensity, SeparatedClustersAcrossIsZero) {
  auto f = make(mcd::GeneratorKind::ClusteredDisjoint, 12);
  mcd::ModeRelation rel(f, mcd::Mode::Crossing);
  EXPECT_EQ(mcd::pair_density(rel, range(0, 6), range(6, 12)), 0);
  mcd::ModeRelation dis(f, mcd::Mode::Disjoint);
  EXPECT_EQ(mcd::pair_density(dis, range(0, 6), range(6, 12)), 1);
}

TEST(PairDensity, MatchesBruteForceRecount) {
  auto f = make(mcd::GeneratorKind::RandomSegments, 40, 3, 50);
  mcd::ModeRelation rel(f, mcd::Mode::Crossing);
  auto a = range(0, 17), b = range(17, 40);
  long count = 0;
  for (auto i : a)
    for (auto j : b) count += mcd::oracle::polylines_touch(f[i].points(), f[j].points());
  EXPECT_EQ(mcd::pair_density(rel, a, b), mcd::ratio(count, 17 * 23));
  EXPECT_THROW(mcd::pair_density(rel, a, mcd::Block{}), mcd::Error);
}

TEST(IncrementStep, EmptyBlockLeavesDensityOne) {
  // 8 + 8 vertices; every cross pair related except z1 x z2.
  mcd::RelationMatrix m(16);
  mcd::Block a = range(0, 8), b = range(8, 16), z1{0, 1}, z2{8, 9};
  for (auto i : a)
    for (auto j : b) m.set(i, j, !(i < 2 && j < 10));
  mcd::ModeRelation rel(m, mcd::Mode::Crossing);
  auto [na, nb] = mcd::increment_step(rel, a, b, z1, z2);
  EXPECT_EQ(mcd::pair_density(rel, na, nb), 1);
  EXPECT_EQ(na, z1);  // first listed among density-one blocks
}

TEST(IncrementStep, UniformDensityPicksFirstBlock) {
  mcd::RelationMatrix m(8);
  mcd::Block a = range(0, 4), b = range(4, 8), z1{0, 1}, z2{4, 5};
  // Related iff (i + j) even outside z1 x z2: every block has density 1/2.
  for (auto i : a)
    for (auto j : b) m.set(i, j, (i + j) % 2 == 0 && !(i < 2 && j < 6));
  mcd::ModeRelation rel(m, mcd::Mode::Crossing);
  auto [na, nb] = mcd::increment_step(rel, a, b, z1, z2);
  EXPECT_EQ(na, z1);
  EXPECT_EQ(nb, (mcd::Block{6, 7}));
}

TEST(IncrementStep, GuaranteedGainOnRandomInstance) {
  auto f = make(mcd::GeneratorKind::RandomSegments, 60, 8, 60);
  mcd::ModeRelation rel(f, mcd::Mode::Crossing);
  auto a = range(0, 30), b = range(30, 60);
  const long c = 3;
  // z1 x z2 with no related pair: greedily grow z2 against a fixed z1.
  mcd::Block z1, z2;
  for (auto i : a)
    if (z1.size() < 10) z1.push_back(i);
  for (auto j : b)
    if (z2.size() < 10 && std::none_of(z1.begin(), z1.end(), [&](std::size_t i) { return rel(i, j); })) z2.push_back(j);
  ASSERT_EQ(z2.size(), 10u);
  Rational d = mcd::pair_density(rel, a, b);
  auto [na, nb] = mcd::increment_step(rel, a, b, z1, z2);
  Rational chosen = mcd::pair_density(rel, na, nb);
  EXPECT_GE(chosen * (1 - mcd::ratio(1, c * c)), d);
  // Recount every block independently.
  Rational best = 0;
  for (const auto& [x, y] : {std::pair{z1, mcd::minus(b, z2)}, {mcd::minus(a, z1), z2}, {mcd::minus(a, z1), mcd::minus(b, z2)}}) {
    long cnt = 0;
    for (auto i : x)
      for (auto j : y) cnt += mcd::oracle::polylines_touch(f[i].points(), f[j].points());
    best = std::max(best, Rational(mcd::ratio(cnt, static_cast<long>(x.size() * y.size()))));
  }
  EXPECT_EQ(chosen, best);
}

TEST(OracleBiclique, Examples) {
  auto all = polylines(make(mcd::GeneratorKind::AllCrossing, 6));
  auto [s1, s2] = mcd::oracle::max_biclique(all, true);
  EXPECT_EQ(std::min(s1.size(), s2.size()), 3u);
  auto clusters = polylines(make(mcd::GeneratorKind::ClusteredDisjoint, 6));
  auto [c1, c2] = mcd::oracle::max_biclique(clusters, false);
  EXPECT_EQ(c1, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(c2, (std::vector<std::size_t>{3, 4, 5}));
  EXPECT_THROW(mcd::oracle::max_biclique(std::vector<mcd::Polyline>(17, all[0]), true), mcd::Error);
}

TEST(OracleBiclique, DoubleEnumerationAgrees) {
  for (int s = 0; s < 5; ++s) {
    auto f = polylines(make(mcd::GeneratorKind::RandomSegments, 8, 50 + s, 60));
    for (bool crossing : {true, false}) {
      auto [s1, s2] = mcd::oracle::max_biclique(f, crossing);
      // Second enumeration: over S2 first, taking S1 as every common partner.
      std::size_t best = 0;
      for (unsigned m2 = 1; m2 < 256; ++m2)
        for (unsigned m1 = 1; m1 < 256; ++m1) {
          if (m1 & m2) continue;
          bool ok = true;
          for (int i = 0; i < 8 && ok; ++i)
            for (int j = 0; j < 8 && ok; ++j)
              if ((m1 >> i & 1) && (m2 >> j & 1)) ok = mcd::oracle::polylines_touch(f[i], f[j]) == crossing;
          if (ok) best = std::max<std::size_t>(best, std::min(__builtin_popcount(m1), __builtin_popcount(m2)));
        }
      EXPECT_EQ(std::min(s1.size(), s2.size()), best);
    }
  }
}

TEST(Extract, AllCrossingCertifiesAtFirstCall) {
  auto f = make(mcd::GeneratorKind::AllCrossing, 128, 1);
  auto c = mcd::extract(f, mcd::Mode::Crossing, mcd::Constants{}, 1);
  ASSERT_EQ(c.trace.size(), 1u);
  EXPECT_EQ(c.trace[0].outcome, "certified");
  EXPECT_GE(c.f1.size(), 2u);
  EXPECT_GE(c.f2.size(), 2u);
  expect_oracle_relation(f, c);
}

TEST(Extract, ClusteredDisjointLandsInDistinctClusters) {
  auto f = make(mcd::GeneratorKind::ClusteredDisjoint, 128, 2);
  auto c = mcd::extract(f, mcd::Mode::Disjoint, mcd::Constants{}, 2);
  expect_oracle_relation(f, c);
  auto cluster = [](std::size_t i) { return i < 64 ? 0 : 1; };
  for (auto i : c.f1) EXPECT_EQ(cluster(i), cluster(c.f1[0]));
  for (auto j : c.f2) EXPECT_NE(cluster(j), cluster(c.f1[0]));
  EXPECT_EQ(c.epsilon_ordered, mcd::ratio(64 * 64, 128 * 128));
}

TEST(Extract, RandomInstancesIncreaseDensity) {
  for (int s = 0; s < 6; ++s) {
    auto f = make(mcd::GeneratorKind::RandomSegments, 80, 200 + s, 80);
    for (auto mode : {mcd::Mode::Crossing, mcd::Mode::Disjoint}) {
      auto c = mcd::extract(f, mode, mcd::Constants{}, s);
      expect_oracle_relation(f, c);
      expect_increasing_trace(c);
    }
  }
}

TEST(Extract, SmallInstancesAgreeWithBicliqueOracle) {
  for (int s = 0; s < 10; ++s) {
    auto f = make(mcd::GeneratorKind::RandomSegments, 6 + s % 5, 300 + s, 60);
    for (auto mode : {mcd::Mode::Crossing, mcd::Mode::Disjoint}) {
      auto [o1, o2] = mcd::oracle::max_biclique(polylines(f), mode == mcd::Mode::Crossing);
      if (o1.empty()) {
        EXPECT_THROW(mcd::extract(f, mode, mcd::Constants{}, s), mcd::Error);
        continue;
      }
      auto c = mcd::extract(f, mode, mcd::Constants{}, s);
      expect_oracle_relation(f, c);
      EXPECT_LE(std::min(c.f1.size(), c.f2.size()), std::min(o1.size(), o2.size()));
    }
  }
}

TEST(Extract, Deterministic) {
  auto f = make(mcd::GeneratorKind::RandomSegments, 60, 9, 60);
  auto a = mcd::extract(f, mcd::Mode::Crossing, mcd::Constants{}, 4);
  auto b = mcd::extract(f, mcd::Mode::Crossing, mcd::Constants{}, 4);
  EXPECT_EQ(a.f1, b.f1);
  EXPECT_EQ(a.f2, b.f2);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(Extract, NoRelatedPairIsNoWitness) {
  auto f = make(mcd::GeneratorKind::ClusteredDisjoint, 2);
  try {
    mcd::extract(f, mcd::Mode::Crossing, mcd::Constants{}, 0);
    FAIL();
  } catch (const mcd::Error& e) {
    EXPECT_EQ(e.code(), mcd::ErrorCode::NoWitness);
  }
}
