#include <gtest/gtest.h>

#include "mcd/oracle.hpp"
#include "mcd/trapezoidal.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

mcd::Frame box_frame() { return {Rational(-100), Rational(200), Rational(-100), Rational(200)}; }

std::size_t euler_cells(const mcd::CurveFamily& f, const mcd::Frame& fr) {
  std::vector<std::pair<Point, Point>> segs;
  for (const auto& c : f.curves) segs.emplace_back(c.vertices().front(), c.vertices().back());
  auto n = mcd::oracle::segment_decomposition_cells(segs, fr.xmin, fr.xmax, fr.ymin, fr.ymax);
  EXPECT_TRUE(n.has_value());
  return n.value_or(0);
}

// Exactly one cell contains p, and it is the located one; or p is on a
// boundary and no cell contains it.
void check_partition(const mcd::TrapezoidalMap& m, const Point& p) {
  std::vector<std::size_t> holders;
  for (std::size_t c = 0; c < m.cells.size(); ++c)
    if (m.cells[c].contains(p)) holders.push_back(c);
  try {
    std::size_t c = mcd::locate_point(m, p);
    ASSERT_EQ(holders.size(), 1u);
    EXPECT_EQ(holders[0], c);
  } catch (const mcd::Error& e) {
    EXPECT_EQ(e.code(), mcd::ErrorCode::OnBoundary);
    EXPECT_TRUE(holders.empty());
  }
}

}  // namespace

TEST(VerticalDecomposition, EmptySampleIsOneCell) {
  mcd::CurveFamily f;
  auto m = mcd::vertical_decomposition(f, {}, box_frame());
  ASSERT_EQ(m.size(), 1u);
  EXPECT_FALSE(m.cells[0].bounded);
  EXPECT_EQ(mcd::locate_point(m, P(3, 4)), 0u);
}

TEST(VerticalDecomposition, OneSegmentGivesFourCells) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(10, 5))});
  auto m = mcd::vertical_decomposition(f, {0}, box_frame());
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m.size(), euler_cells(f, box_frame()));
  std::size_t above = mcd::locate_point(m, P(5, 10));
  EXPECT_EQ(m.cells[above].bottom.curve, std::optional<std::size_t>(0));
  EXPECT_FALSE(m.cells[above].top.curve.has_value());
  EXPECT_EQ(m.cells[above].x_left, 0);
  EXPECT_EQ(m.cells[above].x_right, 10);
  std::size_t below = mcd::locate_point(m, P(5, -10));
  EXPECT_NE(above, below);
  EXPECT_EQ(m.cells[below].top.curve, std::optional<std::size_t>(0));
  EXPECT_THROW(mcd::locate_point(m, P(4, 2)), mcd::Error);
  EXPECT_THROW(mcd::locate_point(m, P(10, 50)), mcd::Error);
  EXPECT_THROW(mcd::locate_point(m, P(0, -50)), mcd::Error);
}

TEST(VerticalDecomposition, TwoCrossingSegmentsMatchEulerCount) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(10, 10)), seg("b", P(1, 9), P(11, -1))});
  auto m = mcd::vertical_decomposition(f, {0, 1}, box_frame());
  EXPECT_EQ(m.size(), euler_cells(f, box_frame()));
  EXPECT_EQ(m.size(), 10u);
}

TEST(VerticalDecomposition, RandomSegmentsMatchEulerCount) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto f = random_segments(seed, 4 + static_cast<int>(seed % 13), 40);
    auto m = mcd::vertical_decomposition(f, f.all_indices(), box_frame());
    EXPECT_EQ(m.size(), euler_cells(f, box_frame())) << "seed " << seed;
    for (const auto& c : m.cells) EXPECT_LE(c.defining_set.size(), 4u);
  }
}

TEST(VerticalDecomposition, PassageThroughNonEventAbscissa) {
  // b's endpoints share no x with the crossing of a and c, so the cell above c
  // continues past a's endpoints only through unwalled intervals.
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(10, 1)), seg("b", P(2, 5), P(8, 6)), seg("c", P(1, -5), P(9, -4))});
  auto m = mcd::vertical_decomposition(f, {0, 1, 2}, box_frame());
  EXPECT_EQ(m.size(), euler_cells(f, box_frame()));
  mcd::Rng rng(5);
  for (int k = 0; k < 500; ++k)
    check_partition(m, {rng.rational(Rational(-99), Rational(199), 12), rng.rational(Rational(-99), Rational(199), 12)});
}

TEST(VerticalDecomposition, ReversalVerticesAreEvents) {
  mcd::TMonotoneCurve arc("arc", {P(0, 0), P(10, 2), P(3, 8), P(12, 10)}, 3);
  auto f = mcd::CurveFamily::from({arc, seg("s", P(5, -5), P(6, 3))});
  auto m = mcd::vertical_decomposition(f, {0, 1}, box_frame());
  for (const auto& c : m.cells) EXPECT_LE(c.defining_set.size(), 4u);
  std::vector<Rational> xs(m.bounds.begin() + 1, m.bounds.end() - 1);
  EXPECT_NE(std::find(xs.begin(), xs.end(), Rational(10)), xs.end());
  EXPECT_NE(std::find(xs.begin(), xs.end(), Rational(3)), xs.end());
  mcd::Rng rng(9);
  for (int k = 0; k < 1000; ++k)
    check_partition(m, {rng.rational(Rational(-20), Rational(30), 10), rng.rational(Rational(-20), Rational(30), 10)});
}

TEST(LocatePoint, PartitionOnRandomQueries) {
  for (std::uint64_t seed = 30; seed < 35; ++seed) {
    auto f = random_segments(seed, 12);
    auto m = mcd::vertical_decomposition(f, f.all_indices(), box_frame());
    mcd::Rng rng(seed);
    for (int k = 0; k < 1000; ++k)
      check_partition(m, {rng.rational(Rational(-99), Rational(199), 10), rng.rational(Rational(-99), Rational(199), 10)});
  }
}

TEST(Trapezoid, PolygonAgreesWithContains) {
  auto f = random_segments(3, 10);
  auto m = mcd::vertical_decomposition(f, f.all_indices(), box_frame());
  mcd::Rng rng(3);
  for (int k = 0; k < 300; ++k) {
    Point p{rng.rational(Rational(-99), Rational(199), 10), rng.rational(Rational(-99), Rational(199), 10)};
    for (const auto& c : m.cells) EXPECT_EQ(c.contains(p), mcd::oracle::strictly_inside_ring(c.polygon(), p));
  }
}

TEST(ConflictLists, SampleConflictsAreEmpty) {
  auto f = random_segments(8, 10);
  auto m = mcd::conflict_lists(mcd::vertical_decomposition(f, f.all_indices(), box_frame()), f);
  for (const auto& list : m.conflicts) EXPECT_TRUE(list.empty());
}

namespace {

void check_conflicts(const mcd::TrapezoidalMap& m, const mcd::CurveFamily& f) {
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    auto ring = m.cells[c].polygon();
    for (std::size_t i = 0; i < f.size(); ++i) {
      bool listed = std::find(m.conflicts[c].begin(), m.conflicts[c].end(), i) != m.conflicts[c].end();
      EXPECT_EQ(listed, mcd::oracle::polyline_meets_ring_interior(f[i].points(), ring)) << "cell " << c << " curve " << i;
    }
  }
  // Dense sampling: every sampled curve point inside a cell implies a conflict.
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& v = f[i].vertices();
    for (std::size_t s = 0; s + 1 < v.size(); ++s)
      for (int k = 0; k <= 1000; ++k) {
        Point q = mcd::lerp(v[s], v[s + 1], mcd::ratio(k, 1000));
        std::size_t c;
        try {
          c = mcd::locate_point(m, q);
        } catch (const mcd::Error&) {
          continue;
        }
        EXPECT_NE(std::find(m.conflicts[c].begin(), m.conflicts[c].end(), i), m.conflicts[c].end())
            << "curve " << i << " cell " << c << " at " << q.x << "," << q.y;
      }
  }
}

}  // namespace

TEST(ConflictLists, CrossingSegmentTraversesCells) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(10, 5)), seg("x", P(-5, 8), P(15, -2))});
  auto m = mcd::conflict_lists(mcd::vertical_decomposition(f, {0}, box_frame()), f);
  std::size_t hits = 0;
  for (const auto& list : m.conflicts) hits += list.size();
  EXPECT_EQ(hits, 4u);
  check_conflicts(m, f);
}

TEST(ConflictLists, RandomAmbientAgainstOracles) {
  for (std::uint64_t seed = 40; seed < 44; ++seed) {
    auto f = random_segments(seed, 12);
    auto m = mcd::conflict_lists(mcd::vertical_decomposition(f, {0, 3, 6, 9}, box_frame()), f);
    check_conflicts(m, f);
  }
}

TEST(ConflictLists, PolylineAmbient) {
  mcd::TMonotoneCurve arc("arc", {P(0, 0), P(10, 2), P(3, 8), P(12, 10)}, 3);
  mcd::TMonotoneCurve zig("zig", {P(-3, -2), P(14, -1), P(1, 20)}, 2);
  auto f = mcd::CurveFamily::from({arc, seg("s", P(5, -5), P(6, 3)), zig, seg("t", P(-8, 1), P(20, 3))});
  ASSERT_TRUE(mcd::validate_family(f).simple);
  auto m = mcd::conflict_lists(mcd::vertical_decomposition(f, {0, 1}, box_frame()), f);
  check_conflicts(m, f);
}
