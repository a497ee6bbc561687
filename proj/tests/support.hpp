#pragma once

#include <string>
#include <vector>

#include "mcd/curve.hpp"
#include "mcd/generate.hpp"
#include "mcd/random.hpp"

namespace testing_support {

using mcd::Point;
using mcd::Rational;

inline Point P(int x, int y) { return {Rational(x), Rational(y)}; }
inline Point P(const char* x, const char* y) { return {mcd::parse_rational(x), mcd::parse_rational(y)}; }

inline mcd::TMonotoneCurve seg(std::string id, Point a, Point b) {
  return mcd::TMonotoneCurve(std::move(id), {a, b}, 1);
}

/// Segments in [0,100]^2 of length up to `len`, retried until the family is
/// simple and in general position.
inline mcd::CurveFamily random_segments(std::uint64_t seed, int n, int len = 30) {
  mcd::Rng rng(seed);
  for (;;) {
    std::vector<mcd::TMonotoneCurve> cs;
    for (int i = 0; i < n; ++i) {
      Point a{rng.rational(Rational(0), Rational(100), 16), rng.rational(Rational(0), Rational(100), 16)};
      Point b{a.x + rng.rational(Rational(1), Rational(len), 16), a.y + rng.rational(Rational(-len), Rational(len), 16)};
      cs.push_back(seg("s" + std::to_string(i), a, b));
    }
    auto f = mcd::CurveFamily::from(std::move(cs));
    if (mcd::validate_family(f).ok()) return f;
  }
}

inline std::vector<Point> random_points(std::uint64_t seed, int n, const Rational& lo, const Rational& hi) {
  mcd::Rng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back({rng.rational(lo, hi, 20), rng.rational(lo, hi, 20)});
  return pts;
}

/// A generated family of 2n curves split alternately into blue and red.
inline mcd::Bicolored bicolored(std::uint64_t seed, int n, int t, int length = 20) {
  mcd::GeneratorSpec g;
  g.kind = t == 1 ? mcd::GeneratorKind::RandomSegments : mcd::GeneratorKind::RandomTMonotone;
  g.n = n;
  g.t = t;
  g.seed = seed;
  g.length = length;
  return mcd::generate_bicolored(g);
}

}  // namespace testing_support
