#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcd/arrangement.hpp"
#include "mcd/structure.hpp"

namespace mcd {

enum class Relation { AllCross, AllDisjoint };

inline const char* to_string(Relation r) { return r == Relation::AllCross ? "all-cross" : "all-disjoint"; }

enum class PatternClass { ContainedInBlueRegions, Pattern1, Pattern2, Pattern3, Unclassified };

inline const char* to_string(PatternClass p) {
  switch (p) {
    case PatternClass::ContainedInBlueRegions: return "contained";
    case PatternClass::Pattern1: return "pattern1";
    case PatternClass::Pattern2: return "pattern2";
    case PatternClass::Pattern3: return "pattern3";
    case PatternClass::Unclassified: return "unclassified";
  }
  return "?";
}

/// Exterior piece of a blue curve between the two blue regions.
struct AlphaPrime {
  std::size_t curve = 0;      // index into the blue family
  Polyline pts;               // from the first clip point to the second
  std::size_t first_vertex = 0, last_vertex = 0;  // original vertices strictly inside; empty if first > last
  bool fallback = false;      // endpoints not on both regions (see two_color)
};

struct TwoColorCertificate {
  std::vector<std::size_t> blue_out, red_out;  // indices into the blue / red family
  Relation relation = Relation::AllDisjoint;
  std::array<std::size_t, 4> case_histogram{};  // contained, pattern1, pattern2, pattern3
  std::optional<AlphaPrime> alpha_prime;
  std::size_t blue_core = 0, red_core = 0;
  std::size_t r_int = 0, r_dis = 0;
  bool brute_force = false;  // produced by the small-core fallback
  std::size_t n = 0;

  double realized_ratio() const {
    return static_cast<double>(n) / static_cast<double>(std::max<std::size_t>(1, std::min(blue_out.size(), red_out.size())));
  }
};

namespace detail {

inline std::vector<Polyline> blue_rings(const RegionQuadruple& q) { return {q.delta_bl.polygon(), q.delta_br.polygon()}; }

inline bool exterior(const RingPiece& p) { return !p.on_boundary && !p.inside[0] && !p.inside[1]; }

inline bool contained_in(const std::vector<RingPiece>& pieces) {
  return std::none_of(pieces.begin(), pieces.end(), exterior);
}

/// x-extent of the exterior part of a curve (0 when there is none).
inline Rational exterior_extent(const std::vector<RingPiece>& pieces) {
  std::optional<Rational> lo, hi;
  for (const auto& p : pieces) {
    if (!exterior(p)) continue;
    Box b = polyline_box(p.pts);
    if (!lo || b.xmin < *lo) lo = b.xmin;
    if (!hi || b.xmax > *hi) hi = b.xmax;
  }
  return lo ? Rational(*hi - *lo) : Rational(0);
}

inline AlphaPrime make_alpha(std::size_t curve, const TMonotoneCurve& alpha, Polyline pts, bool fallback) {
  AlphaPrime a{curve, std::move(pts), 1, 0, fallback};
  const auto& v = alpha.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::find(a.pts.begin() + 1, a.pts.end() - 1, v[i]) == a.pts.end() - 1) continue;
    if (a.first_vertex > a.last_vertex) a.first_vertex = i;
    a.last_vertex = i;
  }
  return a;
}

inline bool relation_holds(const TMonotoneCurve& a, const TMonotoneCurve& b, Relation r) {
  return curves_meet(a, b) == (r == Relation::AllCross);
}

}  // namespace detail

/// A maximal piece of alpha outside both closed blue regions with one end on
/// the boundary of each. `curve` is alpha's index, recorded in the result.
inline AlphaPrime clip_alpha_prime(const TMonotoneCurve& alpha, const RegionQuadruple& q, std::size_t curve = 0) {
  auto rings = detail::blue_rings(q);
  auto pieces = split_at_rings(alpha.points(), rings);
  if (detail::contained_in(pieces)) throw Error(ErrorCode::ValidationError, "curve lies inside the blue regions");
  for (const auto& p : pieces) {
    if (!detail::exterior(p)) continue;
    const Point& a = p.pts.front();
    const Point& b = p.pts.back();
    bool ab = on_ring(rings[0], a) && on_ring(rings[1], b);
    bool ba = on_ring(rings[1], a) && on_ring(rings[0], b);
    if (ab || ba) return detail::make_alpha(curve, alpha, p.pts, false);
  }
  throw Error(ErrorCode::NoSuchSubcurve, "no exterior piece of " + alpha.id() + " joins both regions");
}

/// Crossing pattern of gamma against the reds split by alpha'. Pattern2 wins
/// over Pattern1 over Pattern3 when r_int or r_dis is empty.
inline PatternClass classify_pattern(const TMonotoneCurve& gamma, const CurveFamily& red, std::span<const std::size_t> r_int,
                                     std::span<const std::size_t> r_dis, const RegionQuadruple& q) {
  if (detail::contained_in(split_at_rings(gamma.points(), detail::blue_rings(q))))
    return PatternClass::ContainedInBlueRegions;
  auto all_meet = [&](std::span<const std::size_t> s) {
    return std::all_of(s.begin(), s.end(), [&](std::size_t i) { return curves_meet(gamma, red[i]); });
  };
  auto none_meet = [&](std::span<const std::size_t> s) {
    return std::none_of(s.begin(), s.end(), [&](std::size_t i) { return curves_meet(gamma, red[i]); });
  };
  bool int_all = all_meet(r_int), dis_all = all_meet(r_dis);
  if (int_all && dis_all) return PatternClass::Pattern2;
  if (int_all && none_meet(r_dis)) return PatternClass::Pattern1;
  if (dis_all && none_meet(r_int)) return PatternClass::Pattern3;
  return PatternClass::Unclassified;
}

/// Exhaustive check that every pair in blue_out x red_out has the relation.
inline bool verify_certificate(const CurveFamily& blue, const CurveFamily& red, const TwoColorCertificate& c) {
  if (c.blue_out.empty() || c.red_out.empty()) return false;
  for (auto b : c.blue_out)
    for (auto r : c.red_out)
      if (!detail::relation_holds(blue[b], red[r], c.relation)) return false;
  return true;
}

namespace detail {

/// Small-core fallback: the best star (one blue against all reds of one
/// relation), then greedily extended by blues with the same relation to all of
/// those reds.
inline TwoColorCertificate brute_force_pair(const CurveFamily& blue, const CurveFamily& red) {
  TwoColorCertificate best;
  for (std::size_t b = 0; b < blue.size(); ++b)
    for (Relation rel : {Relation::AllCross, Relation::AllDisjoint}) {
      std::vector<std::size_t> reds;
      for (std::size_t r = 0; r < red.size(); ++r)
        if (relation_holds(blue[b], red[r], rel)) reds.push_back(r);
      if (reds.size() > best.red_out.size()) {
        best.blue_out = {b};
        best.red_out = std::move(reds);
        best.relation = rel;
      }
    }
  if (best.red_out.empty()) throw Error(ErrorCode::NoWitness, "empty families");
  for (std::size_t b = 0; b < blue.size(); ++b) {
    if (b == best.blue_out[0]) continue;
    if (std::all_of(best.red_out.begin(), best.red_out.end(),
                    [&](std::size_t r) { return relation_holds(blue[b], red[r], best.relation); }))
      best.blue_out.push_back(b);
  }
  std::sort(best.blue_out.begin(), best.blue_out.end());
  best.brute_force = true;
  return best;
}

}  // namespace detail

/// Two subfamilies of blue and red related completely (all crossing or all
/// disjoint). Throws CaseAnalysisBreach if some blue curve fits no pattern.
inline TwoColorCertificate two_color(const CurveFamily& blue, const CurveFamily& red, const SamplerConfig& cfg,
                                     long C4 = Constants{}.C4) {
  const std::size_t n = blue.size();
  RegionQuadruple q;
  try {
    q = endpoint_structure(blue, red, cfg, C4);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyCore && e.code() != ErrorCode::TrialsExhausted) throw;
    TwoColorCertificate c = detail::brute_force_pair(blue, red);
    c.n = n;
    return c;
  }
  TwoColorCertificate cert;
  cert.n = n;
  cert.blue_core = q.blue_core.size();
  cert.red_core = q.red_core.size();
  auto rings = detail::blue_rings(q);

  std::vector<std::size_t> contained, outside;
  std::vector<Rational> extent(n);
  for (auto b : q.blue_core) {
    auto pieces = split_at_rings(blue[b].points(), rings);
    if (detail::contained_in(pieces)) {
      contained.push_back(b);
    } else {
      outside.push_back(b);
      extent[b] = detail::exterior_extent(pieces);
    }
  }
  cert.case_histogram[0] = contained.size();
  if (2 * contained.size() >= q.blue_core.size()) {
    cert.blue_out = contained;
    cert.red_out = q.red_core;
    cert.relation = Relation::AllDisjoint;
  } else {
    std::vector<std::size_t> order = outside;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return extent[a] > extent[b]; });
    for (auto a : order) {
      try {
        cert.alpha_prime = clip_alpha_prime(blue[a], q, a);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoSuchSubcurve) throw;
      }
    }
    if (!cert.alpha_prime) {
      // No curve joins the two regions through the exterior (possible when
      // they touch); any exterior piece still splits the reds.
      std::size_t a = order.front();
      for (const auto& p : split_at_rings(blue[a].points(), rings))
        if (detail::exterior(p)) {
          cert.alpha_prime = detail::make_alpha(a, blue[a], p.pts, true);
          break;
        }
    }
    std::vector<std::size_t> r_int, r_dis;
    for (auto r : q.red_core) (polylines_meet(red[r].points(), cert.alpha_prime->pts) ? r_int : r_dis).push_back(r);
    cert.r_int = r_int.size();
    cert.r_dis = r_dis.size();
    std::array<std::vector<std::size_t>, 3> cls;  // pattern1, pattern2, pattern3
    for (auto b : outside) {
      PatternClass p = classify_pattern(blue[b], red, r_int, r_dis, q);
      if (p == PatternClass::Unclassified)
        throw Error(ErrorCode::CaseAnalysisBreach, "blue curve " + blue[b].id() + " fits no crossing pattern");
      cls[static_cast<int>(p) - 1].push_back(b);
    }
    for (int k = 0; k < 3; ++k) cert.case_histogram[k + 1] = cls[k].size();
    std::size_t pick = 1;  // Pattern2 first, then Pattern1, then Pattern3
    for (std::size_t k : {0, 2})
      if (cls[k].size() > cls[pick].size()) pick = k;
    cert.blue_out = cls[pick];
    if (pick == 1) {
      cert.red_out = q.red_core;
      cert.relation = Relation::AllCross;
    } else {
      const auto& crossed = pick == 0 ? r_int : r_dis;
      const auto& avoided = pick == 0 ? r_dis : r_int;
      if (crossed.size() >= avoided.size()) {
        cert.red_out = crossed;
        cert.relation = Relation::AllCross;
      } else {
        cert.red_out = avoided;
        cert.relation = Relation::AllDisjoint;
      }
    }
  }
  if (!verify_certificate(blue, red, cert))
    throw Error(ErrorCode::CaseAnalysisBreach, "certificate failed pairwise verification");
  return cert;
}

}  // namespace mcd
