#include <gtest/gtest.h>

#include "mcd/curve.hpp"
#include "mcd/random.hpp"

namespace {

using mcd::Point;
using mcd::Rational;

Point P(const char* x, const char* y) { return {mcd::parse_rational(x), mcd::parse_rational(y)}; }
Point P(int x, int y) { return {Rational(x), Rational(y)}; }

mcd::TMonotoneCurve seg(std::string id, Point a, Point b) {
  return mcd::TMonotoneCurve(std::move(id), {a, b}, 1);
}

std::vector<Point> points_of(const std::vector<mcd::Contact>& cs) {
  std::vector<Point> out;
  for (const auto& c : cs) out.push_back(c.p);
  return out;
}

// Cramer's rule on the two supporting lines; returns nothing for parallel lines
// or when the solution falls outside either segment.
std::optional<Point> cramer(const Point& a, const Point& b, const Point& c, const Point& d) {
  Rational a1 = b.y - a.y, b1 = a.x - b.x, c1 = a1 * a.x + b1 * a.y;
  Rational a2 = d.y - c.y, b2 = c.x - d.x, c2 = a2 * c.x + b2 * c.y;
  Rational det = a1 * b2 - a2 * b1;
  if (det == 0) return std::nullopt;
  Point p{(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
  auto within = [](const Rational& v, const Rational& lo, const Rational& hi) {
    return (lo <= v && v <= hi) || (hi <= v && v <= lo);
  };
  if (!within(p.x, a.x, b.x) || !within(p.y, a.y, b.y)) return std::nullopt;
  if (!within(p.x, c.x, d.x) || !within(p.y, c.y, d.y)) return std::nullopt;
  return p;
}

}  // namespace

TEST(Rational, SerializesInLowestTerms) {
  EXPECT_EQ(mcd::to_string(mcd::parse_rational("6/4")), "3/2");
  EXPECT_EQ(mcd::to_string(Rational(3)), "3/1");
  EXPECT_EQ(mcd::to_string(mcd::parse_rational("-10/4")), "-5/2");
  EXPECT_THROW(mcd::parse_rational("1/-2"), mcd::Error);
  EXPECT_EQ(mcd::to_string(mcd::parse_rational("-7")), "-7/1");
  EXPECT_THROW(mcd::parse_rational("1/0"), mcd::Error);
  EXPECT_THROW(mcd::parse_rational("x"), mcd::Error);
  EXPECT_THROW(mcd::parse_rational(""), mcd::Error);
}

TEST(IntersectPair, SymmetricCrossing) {
  auto pts = points_of(mcd::intersect_pair(seg("a", P(0, 0), P(2, 2)), seg("b", P(0, 2), P(2, 0))));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], P(1, 1));
}

TEST(IntersectPair, ParallelDisjoint) {
  EXPECT_TRUE(mcd::intersect_pair(seg("a", P(0, 0), P(1, 0)), seg("b", P(0, 1), P(1, 1))).empty());
}

TEST(IntersectPair, TwoMonotoneArcCrossedTwice) {
  mcd::TMonotoneCurve a("a", {P(0, 0), P(2, 1), P(0, 2)}, 2);
  auto b = seg("b", P(1, -1), P("3/2", "3"));
  auto cs = mcd::intersect_pair(a, b);
  ASSERT_EQ(cs.size(), 2u);
  // Solved by hand from the parametrizations of the two edges.
  EXPECT_EQ(cs[0].p, P("6/5", "3/5"));
  EXPECT_EQ(cs[1].p, P("22/17", "23/17"));
  EXPECT_EQ(cs[0].kind, mcd::ContactKind::Crossing);
  EXPECT_EQ(cs[1].kind, mcd::ContactKind::Crossing);
}

TEST(IntersectPair, TangencyFlagged) {
  mcd::TMonotoneCurve v("v", {P(0, 1), P(1, 0), P(2, 1)}, 1);
  auto cs = mcd::intersect_pair(v, seg("h", P(0, 0), P(2, 0)));
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, mcd::ContactKind::Touching);
}

TEST(IntersectPair, OverlapRejected) {
  EXPECT_THROW(mcd::intersect_pair(seg("a", P(0, 0), P(2, 0)), seg("b", P(1, 0), P(3, 0))), mcd::Error);
}

TEST(IntersectPair, SymmetricOnRandomPairs) {
  mcd::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    std::vector<Point> a, b;
    Rational x = 0;
    for (int i = 0; i < 4; ++i) {
      x += rng.rational(mcd::ratio(1, 8), Rational(1), 8);
      a.push_back({x, rng.rational(Rational(0), Rational(4), 8)});
    }
    x = rng.rational(Rational(0), Rational(1), 8);
    for (int i = 0; i < 4; ++i) {
      x += rng.rational(mcd::ratio(1, 8), Rational(1), 8);
      b.push_back({x, rng.rational(Rational(0), Rational(4), 8)});
    }
    mcd::TMonotoneCurve ca("a", a, 1), cb("b", b, 1);
    std::vector<mcd::Contact> ab, ba;
    try {
      ab = mcd::intersect_pair(ca, cb);
      ba = mcd::intersect_pair(cb, ca);
    } catch (const mcd::Error&) {
      continue;
    }
    EXPECT_EQ(points_of(ab), points_of(ba));
  }
}

TEST(IntersectPair, AgreesWithCramerOnRandomSegments) {
  mcd::Rng rng(2024);
  auto coord = [&] { return rng.rational(Rational(-10), Rational(10), 6); };
  int compared = 0;
  while (compared < 1000) {
    Point a{coord(), coord()}, b{coord(), coord()}, c{coord(), coord()}, d{coord(), coord()};
    if (a.x == b.x || c.x == d.x) continue;
    auto mine = mcd::meet_segments(a, b, c, d);
    if (mine.kind == mcd::SegmentRelation::Overlap) continue;
    if (mcd::orient(a, b, c) == 0 && mcd::orient(a, b, d) == 0) continue;
    auto ref = cramer(a, b, c, d);
    ASSERT_EQ(ref.has_value(), mine.kind == mcd::SegmentRelation::Point);
    if (ref) EXPECT_EQ(*ref, mine.p);
    ++compared;
  }
}

TEST(TMonotoneCurve, EnforcesInvariants) {
  EXPECT_THROW(mcd::TMonotoneCurve("v", {P(0, 0), P(0, 1)}, 1), mcd::Error);
  EXPECT_THROW(mcd::TMonotoneCurve("s", {P(0, 0)}, 1), mcd::Error);
  EXPECT_THROW(mcd::TMonotoneCurve("r", {P(0, 0), P(2, 1), P(0, 2)}, 1), mcd::Error);
  EXPECT_THROW(mcd::TMonotoneCurve("x", {P(0, 0), P(2, 2), P(3, 1), P(0, 1)}, 3), mcd::Error);
  mcd::TMonotoneCurve c("z", {P(3, 0), P(0, 1), P(2, 2), P(1, 3)}, 3);
  EXPECT_EQ(c.reversals(), 2);
  EXPECT_EQ(c.left_endpoint(), P(1, 3));
  EXPECT_EQ(c.right_endpoint(), P(3, 0));
  EXPECT_EQ(c.critical_points().size(), 4u);
  auto pieces = c.monotone_pieces();
  ASSERT_EQ(pieces.size(), 3u);
  for (const auto& piece : pieces) EXPECT_LT(piece.front().x, piece.back().x);
}

TEST(IntersectionMatrix, AllCrossingAndAllDisjoint) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(4, 4)), seg("b", P(0, 4), P(4, 0)), seg("c", P(1, -1), P(3, 5))});
  auto m = mcd::intersection_matrix(f);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), i != j);
  auto g = mcd::CurveFamily::from({seg("a", P(0, 0), P(1, 0)), seg("b", P(0, 1), P(1, 1))});
  EXPECT_EQ(mcd::intersection_matrix(g).count_pairs(), 0u);
}

TEST(IntersectionMatrix, MatchesPerPairRecomputation) {
  mcd::Rng rng(77);
  std::vector<mcd::TMonotoneCurve> cs;
  for (int i = 0; i < 10; ++i) {
    Point a{rng.rational(Rational(0), Rational(10), 10), rng.rational(Rational(0), Rational(10), 10)};
    Point b{a.x + rng.rational(Rational(1), Rational(5), 10), rng.rational(Rational(0), Rational(10), 10)};
    cs.push_back(seg("s" + std::to_string(i), a, b));
  }
  auto f = mcd::CurveFamily::from(cs);
  auto m = mcd::intersection_matrix(f);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      if (i != j) EXPECT_EQ(m(i, j), cramer(f[i].vertices()[0], f[i].vertices()[1], f[j].vertices()[0], f[j].vertices()[1]).has_value());
}

TEST(ValidateFamily, Reports) {
  auto ok = mcd::CurveFamily::from({seg("a", P(0, 0), P(2, 2)), seg("b", P(-1, 2), P(3, 0))});
  auto r = mcd::validate_family(ok);
  EXPECT_TRUE(r.simple);
  EXPECT_TRUE(r.general_position);

  mcd::TMonotoneCurve arc("arc", {P(0, 0), P(2, 1), P(0, 2)}, 2);
  auto twice = mcd::CurveFamily::from({arc, seg("b", P(1, -1), P("3/2", "3"))});
  r = mcd::validate_family(twice);
  EXPECT_FALSE(r.simple);
  ASSERT_TRUE(r.simple_witness);
  EXPECT_EQ(r.simple_witness->curve_ids, (std::vector<std::string>{"arc", "b"}));

  auto same_x = mcd::CurveFamily::from({seg("a", P(0, 0), P(1, 0)), seg("b", P(0, 1), P(2, 1))});
  r = mcd::validate_family(same_x);
  EXPECT_TRUE(r.simple);
  EXPECT_FALSE(r.general_position);

  auto triple = mcd::CurveFamily::from({seg("a", P(-1, -1), P(1, 1)), seg("b", P(-2, 2), P(2, -2)), seg("c", P(-3, 0), P(3, 0))});
  r = mcd::validate_family(triple);
  EXPECT_TRUE(r.simple);
  EXPECT_FALSE(r.general_position);
  EXPECT_EQ(r.general_position_witness->curve_ids.size(), 3u);
}

TEST(Perturb, IdentityOnGenericFamily) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(2, 2)), seg("b", P(-1, 2), P(3, 0))});
  auto g = mcd::perturb_to_general_position(f, 5);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i].vertices(), g[i].vertices());
}

TEST(Perturb, SeparatesSharedEndpointAbscissa) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(1, 0)), seg("b", P(0, 1), P(2, 1))});
  auto before = mcd::intersection_matrix(f);
  auto g = mcd::perturb_to_general_position(f, 5);
  EXPECT_TRUE(mcd::validate_family(g).ok());
  EXPECT_EQ(mcd::intersection_matrix(g), before);
}

TEST(Perturb, MovesEndpointOffAnotherCurve) {
  auto f = mcd::CurveFamily::from({seg("a", P(0, 0), P(4, 0)), seg("b", P(2, 0), P(3, 3))});
  auto before = mcd::intersection_matrix(f);
  ASSERT_TRUE(before(0, 1));
  auto g = mcd::perturb_to_general_position(f, 9);
  EXPECT_TRUE(mcd::validate_family(g).ok());
  EXPECT_EQ(mcd::intersection_matrix(g), before);
  EXPECT_FALSE(mcd::on_segment(g[1].vertices()[0], g[0].vertices()[0], g[0].vertices()[1]));
}

TEST(Perturb, RejectsTangency) {
  mcd::TMonotoneCurve v("v", {P(0, 1), P(1, 0), P(2, 1)}, 1);
  auto f = mcd::CurveFamily::from({v, seg("h", P("-1/2", "0"), P("5/2", "0"))});
  EXPECT_THROW(mcd::perturb_to_general_position(f, 1), mcd::Error);
}
