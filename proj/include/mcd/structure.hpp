#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mcd/arrangement.hpp"
#include "mcd/curve.hpp"
#include "mcd/oracle.hpp"
#include "mcd/random.hpp"
#include "mcd/sampler.hpp"

namespace mcd {

/// A face of a ring arrangement, kept with its rings so membership can be
/// re-derived from raw geometry.
struct FaceRegion {
  RingArrangement arrangement;
  std::size_t face = 0;

  const Point& witness() const { return arrangement.witness(face); }
  bool contains(const Point& p) const {
    auto f = arrangement.locate(p);
    return f && *f == face;
  }
};

struct StageLog {
  std::string name;
  std::size_t curves = 0;   // curves fed to the sampler
  std::size_t points = 0;   // points fed to the sampler
  std::size_t kept_curves = 0;
  std::size_t kept_points = 0;
  int trials = 0;
};

/// Regions housing blue and red endpoints. Core indices refer to positions in
/// the blue and red input families.
struct RegionQuadruple {
  Trapezoid delta_bl, delta_br, delta_3, delta_4;
  FaceRegion delta_rl, delta_rr;
  std::vector<std::size_t> blue_core, red_core;
  std::vector<StageLog> stages;
  std::size_t red_before_refinement = 0;
  double size_bound = 0;
};

/// Blue and red families merged into one, blue first.
inline CurveFamily merge_families(const CurveFamily& blue, const CurveFamily& red) {
  std::vector<TMonotoneCurve> all = blue.curves;
  all.insert(all.end(), red.curves.begin(), red.curves.end());
  CurveFamily f = CurveFamily::from(std::move(all));
  f.t = std::max({f.t, blue.t, red.t});
  return f;
}

/// Lower bound n / (C4 t^ log^2 t^)^4 on both core sizes.
inline double core_size_bound(long C4, int t, std::size_t n) {
  double l = log2_t_hat(t);
  return static_cast<double>(n) / std::pow(static_cast<double>(C4) * t_hat(t) * l * l, 4);
}

namespace detail {

inline Polyline closed(const Polyline& ring) {
  Polyline p = ring;
  p.push_back(ring.front());
  return p;
}

/// Face of arrangement(rings) outside the blue rings (indices 1 and 2) that
/// holds the most of `pts`, lowest face id on ties.
inline std::pair<FaceRegion, std::vector<std::size_t>> richest_face(std::vector<Polyline> rings,
                                                                    const std::vector<Point>& pts) {
  FaceRegion region{RingArrangement(std::move(rings)), 0};
  const auto& arr = region.arrangement;
  std::vector<std::vector<std::size_t>> held(arr.face_count());
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (auto f = arr.locate(pts[k])) held[*f].push_back(k);
  std::size_t best = arr.face_count();
  for (std::size_t f = 0; f < arr.face_count(); ++f) {
    if (arr.face_inside(f, 1) || arr.face_inside(f, 2)) continue;
    if (best == arr.face_count() || held[f].size() > held[best].size()) best = f;
  }
  if (best == arr.face_count()) throw Error(ErrorCode::EmptyCore, "no face outside the blue regions");
  region.face = best;
  return {std::move(region), held[best]};
}

}  // namespace detail

/// Re-checks every property of a quadruple from raw geometry.
inline bool verify_quadruple(const CurveFamily& blue, const CurveFamily& red, const RegionQuadruple& q) {
  if (q.blue_core.empty() || q.red_core.empty()) return false;
  Polyline bl = q.delta_bl.polygon(), br = q.delta_br.polygon();
  for (auto i : q.blue_core) {
    if (i >= blue.size()) return false;
    if (!oracle::strictly_inside_ring(bl, blue[i].left_endpoint())) return false;
    if (!oracle::strictly_inside_ring(br, blue[i].right_endpoint())) return false;
  }
  // Fresh arrangements so that face membership is not taken from construction.
  FaceRegion rl{RingArrangement(q.delta_rl.arrangement.rings()), 0};
  FaceRegion rr{RingArrangement(q.delta_rr.arrangement.rings()), 0};
  auto rl_face = rl.arrangement.locate(q.delta_rl.witness());
  auto rr_face = rr.arrangement.locate(q.delta_rr.witness());
  if (!rl_face || !rr_face) return false;
  rl.face = *rl_face;
  rr.face = *rr_face;
  for (const FaceRegion* r : {&rl, &rr}) {
    const Point& w = r->witness();
    if (on_ring(bl, w) || on_ring(br, w) || point_in_ring(bl, w) || point_in_ring(br, w)) return false;
  }
  Polyline cbl = detail::closed(bl), cbr = detail::closed(br);
  for (auto i : q.red_core) {
    if (i >= red.size()) return false;
    if (!rl.contains(red[i].left_endpoint()) || !rr.contains(red[i].right_endpoint())) return false;
    const auto& pts = red[i].points();
    if (oracle::polyline_meets_ring_interior(pts, bl) || oracle::polyline_meets_ring_interior(pts, br)) return false;
    if (polylines_meet(pts, cbl) || polylines_meet(pts, cbr)) return false;
  }
  return true;
}

/// Four nested sampler runs followed by two face refinements. Both families
/// must have the same size and their union must be simple and in general
/// position. Throws EmptyCore when a stage leaves nothing to work with.
inline RegionQuadruple endpoint_structure(const CurveFamily& blue, const CurveFamily& red, const SamplerConfig& cfg,
                                          long C4 = Constants{}.C4) {
  if (blue.size() != red.size()) throw Error(ErrorCode::ValidationError, "blue and red sizes differ");
  if (blue.size() == 0) throw Error(ErrorCode::EmptyCore, "empty families");
  const CurveFamily all = merge_families(blue, red);
  if (!validate_family(all).ok()) throw Error(ErrorCode::ValidationError, "union not simple / in general position");
  const std::size_t nb = blue.size();
  const Frame frame = frame_for(all);

  RegionQuadruple q;
  auto run = [&](const char* name, const std::vector<std::size_t>& curves, const std::vector<std::size_t>& owners,
                 bool left, int stage) {
    std::vector<Point> pts;
    for (auto i : owners) pts.push_back(left ? all[i].left_endpoint() : all[i].right_endpoint());
    SamplerConfig c = cfg;
    c.seed = derive_seed(cfg.seed, stream::kStructure, static_cast<std::uint64_t>(stage));
    GoodTrapezoidResult r = good_trapezoid(all, curves, pts, c, frame, true);
    std::vector<std::size_t> kept;
    for (auto k : r.captured_points) kept.push_back(owners[k]);
    q.stages.push_back({name, curves.size(), pts.size(), r.surviving_curves.size(), kept.size(), r.trials_used});
    if (kept.empty()) throw Error(ErrorCode::EmptyCore, std::string(name) + " captured no endpoints");
    return std::make_pair(std::move(r), std::move(kept));
  };

  std::vector<std::size_t> reds, blues;
  for (std::size_t i = 0; i < nb; ++i) blues.push_back(i);
  for (std::size_t i = nb; i < all.size(); ++i) reds.push_back(i);

  auto [s1, b1] = run("blue-left", reds, blues, true, 1);
  q.delta_bl = s1.cell;
  auto [s2, b2] = run("blue-right", s1.surviving_curves, b1, false, 2);
  q.delta_br = s2.cell;
  auto [s3, r3] = run("red-left", b2, s2.surviving_curves, true, 3);
  q.delta_3 = s3.cell;
  auto [s4, r4] = run("red-right", s3.surviving_curves, r3, false, 4);
  q.delta_4 = s4.cell;
  q.blue_core = s4.surviving_curves;

  // Reds touching the closed blue regions could slip along their boundaries,
  // so only reds clear of both closed regions are kept.
  Polyline bl = q.delta_bl.polygon(), br = q.delta_br.polygon();
  Polyline cbl = detail::closed(bl), cbr = detail::closed(br);
  std::vector<std::size_t> clear;
  for (auto i : r4)
    if (!polylines_meet(all[i].points(), cbl) && !polylines_meet(all[i].points(), cbr)) clear.push_back(i);
  q.red_before_refinement = clear.size();
  if (clear.empty()) throw Error(ErrorCode::EmptyCore, "every remaining red touches a blue region");

  std::vector<Point> lefts, rights;
  for (auto i : clear) lefts.push_back(all[i].left_endpoint());
  auto [rl, in_rl] = detail::richest_face({q.delta_3.polygon(), bl, br}, lefts);
  std::vector<std::size_t> mid;
  for (auto k : in_rl) mid.push_back(clear[k]);
  if (mid.empty()) throw Error(ErrorCode::EmptyCore, "no red left endpoint outside the blue regions");
  for (auto i : mid) rights.push_back(all[i].right_endpoint());
  auto [rr, in_rr] = detail::richest_face({q.delta_4.polygon(), bl, br}, rights);
  if (in_rr.empty()) throw Error(ErrorCode::EmptyCore, "no red right endpoint outside the blue regions");
  q.delta_rl = std::move(rl);
  q.delta_rr = std::move(rr);
  for (auto k : in_rr) q.red_core.push_back(mid[k] - nb);
  std::sort(q.red_core.begin(), q.red_core.end());
  std::sort(q.blue_core.begin(), q.blue_core.end());
  q.size_bound = core_size_bound(C4, all.t, nb);
  if (q.blue_core.empty()) throw Error(ErrorCode::EmptyCore, "no blue curve survives");
  if (!verify_quadruple(blue, red, q)) throw Error(ErrorCode::CaseAnalysisBreach, "quadruple failed re-verification");
  return q;
}

}  // namespace mcd
