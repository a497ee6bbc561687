#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcd/constants.hpp"
#include "mcd/curve.hpp"
#include "mcd/oracle.hpp"
#include "mcd/random.hpp"
#include "mcd/trapezoidal.hpp"

namespace mcd {

struct SamplerConfig {
  long C1 = Constants{}.C1;
  long C2 = Constants{}.C2;
  long C3 = Constants{}.C3;
  long max_trials = Constants{}.max_trials;
  std::uint64_t seed = 0;
  long n0 = Constants{}.n0;

  static SamplerConfig from(const Constants& k, std::uint64_t seed) {
    return SamplerConfig{k.C1, k.C2, k.C3, k.max_trials, seed, k.n0};
  }
};

struct GoodTrapezoidResult {
  Trapezoid cell;
  std::vector<std::size_t> surviving_curves;  // indices into the family
  std::vector<std::size_t> captured_points;   // indices into the point list
  std::vector<std::size_t> sample;
  std::size_t cell_count = 0;
  int trials_used = 0;
  bool exhaustive = false;
};

/// Sample size parameter r = max(2, ceil(C3 log2 t^)).
inline long sample_parameter(long C3, int t) {
  return std::max(2L, static_cast<long>(std::ceil(static_cast<double>(C3) * log2_t_hat(t) - 1e-9)));
}

/// Lower bound n_points / (C1 t^ log^2 t^) required of the captured points.
inline double captured_points_bound(long C1, int t, std::size_t n_points) {
  double l = log2_t_hat(t);
  return static_cast<double>(n_points) / (static_cast<double>(C1) * t_hat(t) * l * l);
}

namespace detail {

inline int family_t(const CurveFamily& f, std::span<const std::size_t> curves) {
  int t = 1;
  for (auto i : curves) t = std::max(t, f[i].t_budget());
  return t;
}

struct CellChoice {
  std::size_t cell;
  std::vector<std::size_t> points;
};

/// Good cells (fewer than n/2 conflicts) and the one holding the most points
/// (lowest cell id on ties).
inline std::optional<CellChoice> best_good_cell(const TrapezoidalMap& m, std::size_t n_curves,
                                                std::span<const Point> points) {
  std::vector<std::vector<std::size_t>> held(m.cells.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    try {
      held[locate_point(m, points[k])].push_back(k);
    } catch (const Error&) {
      // On a sample curve or wall: in no open cell.
    }
  }
  std::optional<CellChoice> best;
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    if (2 * m.conflicts[c].size() >= n_curves) continue;
    if (!best || held[c].size() > best->points.size()) best = CellChoice{c, held[c]};
  }
  return best;
}

inline GoodTrapezoidResult make_result(const TrapezoidalMap& m, const CellChoice& choice,
                                       std::span<const std::size_t> curves) {
  GoodTrapezoidResult res;
  res.cell = m.cells[choice.cell];
  res.captured_points = choice.points;
  const auto& bad = m.conflicts[choice.cell];
  for (auto i : curves)
    if (std::find(bad.begin(), bad.end(), i) == bad.end()) res.surviving_curves.push_back(i);
  res.sample = m.sample;
  res.cell_count = m.cells.size();
  return res;
}

}  // namespace detail

/// Re-checks a result from raw geometry: captured points strictly inside the
/// cell, surviving curves avoid its interior, and both cardinality bounds.
inline bool verify_good_trapezoid(const CurveFamily& f, std::span<const std::size_t> curves,
                                  std::span<const Point> points, const GoodTrapezoidResult& r, long C1) {
  Polyline ring = r.cell.polygon();
  for (auto k : r.captured_points)
    if (!oracle::strictly_inside_ring(ring, points[k])) return false;
  for (auto i : r.surviving_curves) {
    if (std::find(curves.begin(), curves.end(), i) == curves.end()) return false;
    if (oracle::polyline_meets_ring_interior(f[i].points(), ring)) return false;
  }
  if (2 * r.surviving_curves.size() <= curves.size()) return false;
  int t = detail::family_t(f, curves);
  return static_cast<double>(r.captured_points.size()) >= captured_points_bound(C1, t, points.size());
}

/// Las Vegas search for a cell of the vertical decomposition of a random
/// sample that holds many points and is avoided by more than half the curves.
/// `curves` indexes the family; the family must be simple and in general
/// position and no point may lie on a curve (checked unless `prechecked`).
inline GoodTrapezoidResult good_trapezoid(const CurveFamily& f, std::span<const std::size_t> curves,
                                          std::span<const Point> points, const SamplerConfig& cfg,
                                          std::optional<Frame> frame = std::nullopt, bool prechecked = false) {
  const std::size_t n = curves.size();
  if (n == 0) throw Error(ErrorCode::ValidationError, "no curves");
  if (!prechecked) {
    std::vector<std::size_t> idx(curves.begin(), curves.end());
    if (!validate_family(f.subfamily(idx)).ok())
      throw Error(ErrorCode::ValidationError, "curves not simple / in general position");
    for (const auto& p : points)
      for (auto i : curves) {
        const auto& v = f[i].vertices();
        for (std::size_t s = 0; s + 1 < v.size(); ++s)
          if (on_segment(p, v[s], v[s + 1])) throw Error(ErrorCode::ValidationError, "point lies on curve " + f[i].id());
      }
  }
  if (!frame) {
    std::vector<std::size_t> idx(curves.begin(), curves.end());
    frame = frame_for(f.subfamily(idx), points);
  }
  const int t = detail::family_t(f, curves);
  const double need = captured_points_bound(cfg.C1, t, points.size());

  if (static_cast<long>(n) < cfg.n0) {
    // Exhaustive: every sample of at most 4 t^ curves, best cell by
    // (points, surviving curves), first in subset order on ties.
    std::optional<GoodTrapezoidResult> best;
    const std::size_t limit = static_cast<std::size_t>(4 * t_hat(t));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > limit) continue;
      std::vector<std::size_t> sample;
      for (std::size_t k = 0; k < n; ++k)
        if (mask >> k & 1) sample.push_back(curves[k]);
      TrapezoidalMap m = conflict_lists(vertical_decomposition(f, sample, *frame), f, curves);
      auto choice = detail::best_good_cell(m, n, points);
      if (!choice) continue;
      GoodTrapezoidResult r = detail::make_result(m, *choice, curves);
      if (!best || r.captured_points.size() > best->captured_points.size() ||
          (r.captured_points.size() == best->captured_points.size() &&
           r.surviving_curves.size() > best->surviving_curves.size()))
        best = std::move(r);
    }
    if (!best || static_cast<double>(best->captured_points.size()) < need)
      throw Error(ErrorCode::TrialsExhausted, "exhaustive search found no good cell");
    best->exhaustive = true;
    best->trials_used = 1;
    return *best;
  }

  const long r = sample_parameter(cfg.C3, t);
  const double cell_cap = 9.0 * static_cast<double>(cfg.C2) * static_cast<double>(r * r) * t_hat(t);
  for (long trial = 0; trial < cfg.max_trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, stream::kSampler, static_cast<std::uint64_t>(trial)));
    std::vector<std::size_t> sample;
    for (auto i : curves)
      if (rng.bernoulli(static_cast<std::uint64_t>(std::min<long>(r, static_cast<long>(n))), n)) sample.push_back(i);
    TrapezoidalMap m = vertical_decomposition(f, sample, *frame);
    if (static_cast<double>(m.cells.size()) > cell_cap) continue;
    m = conflict_lists(std::move(m), f, curves);
    bool any_bad = false;
    for (const auto& list : m.conflicts)
      if (2 * list.size() >= n) any_bad = true;
    if (any_bad) continue;
    auto choice = detail::best_good_cell(m, n, points);
    if (!choice || static_cast<double>(choice->points.size()) < need) continue;
    GoodTrapezoidResult res = detail::make_result(m, *choice, curves);
    res.trials_used = static_cast<int>(trial + 1);
    return res;
  }
  throw Error(ErrorCode::TrialsExhausted, "no good sample within max_trials");
}

inline GoodTrapezoidResult good_trapezoid(const CurveFamily& f, std::span<const Point> points, const SamplerConfig& cfg) {
  auto all = f.all_indices();
  return good_trapezoid(f, all, points, cfg);
}

}  // namespace mcd
