#pragma once

#include <string>
#include <vector>

#include "mcd/density.hpp"
#include "mcd/io.hpp"
#include "mcd/sampler.hpp"
#include "mcd/structure.hpp"
#include "mcd/topo.hpp"
#include "mcd/trapezoidal.hpp"
#include "mcd/two_color.hpp"

// JSON views of the results; curves are referred to by id.
namespace mcd::io {

inline Json ids(const CurveFamily& f, std::span<const std::size_t> idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(f[i].id());
  return a;
}

inline Json edge_ids(const TopoGraph& g, std::span<const std::size_t> idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(g.edges[i].id);
  return a;
}

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  Json j;
  j["curves"] = w->curve_ids;
  j["point"] = w->point ? point_json(*w->point) : Json(nullptr);
  j["reason"] = w->reason;
  return j;
}

inline Json validation_json(const ValidationReport& r) {
  Json j;
  j["version"] = "validation/1";
  j["simple"] = r.simple;
  j["general_position"] = r.general_position;
  j["simple_witness"] = witness_json(r.simple_witness);
  j["general_position_witness"] = witness_json(r.general_position_witness);
  return j;
}

inline Json trapezoid_json(const Trapezoid& t, const CurveFamily& f) {
  Json j;
  j["x_left"] = rational_json(t.x_left);
  j["x_right"] = rational_json(t.x_right);
  j["bottom"] = t.bottom.curve ? Json(f[*t.bottom.curve].id()) : Json(nullptr);
  j["top"] = t.top.curve ? Json(f[*t.top.curve].id()) : Json(nullptr);
  j["defining_set"] = ids(f, t.defining_set);
  j["bounded"] = t.bounded;
  j["polygon"] = polyline_json(t.polygon());
  return j;
}

inline Json decomposition_json(const TrapezoidalMap& m, const CurveFamily& f) {
  Json j;
  j["version"] = "decomposition/1";
  j["sample"] = ids(f, m.sample);
  j["frame"] = Json::array({rational_json(m.frame.xmin), rational_json(m.frame.xmax), rational_json(m.frame.ymin),
                            rational_json(m.frame.ymax)});
  j["cell_count"] = m.cells.size();
  Json cells = Json::array();
  for (std::size_t k = 0; k < m.cells.size(); ++k) {
    Json c = trapezoid_json(m.cells[k], f);
    if (k < m.conflicts.size()) c["conflicts"] = ids(f, m.conflicts[k]);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j;
}

inline Json good_trapezoid_json(const GoodTrapezoidResult& r, const CurveFamily& f, const SamplerConfig& cfg,
                                std::size_t n_points) {
  Json j;
  j["version"] = "good-trapezoid/1";
  j["cell"] = trapezoid_json(r.cell, f);
  j["surviving_curves"] = ids(f, r.surviving_curves);
  j["captured_points"] = r.captured_points;
  j["sample"] = ids(f, r.sample);
  j["cell_count"] = r.cell_count;
  j["trials_used"] = r.trials_used;
  j["exhaustive"] = r.exhaustive;
  j["captured_bound"] = captured_points_bound(cfg.C1, f.t, n_points);
  return j;
}

inline Json quadruple_json(const RegionQuadruple& q, const CurveFamily& blue, const CurveFamily& red) {
  CurveFamily all = merge_families(blue, red);
  Json j;
  j["version"] = "region-quadruple/1";
  j["delta_bl"] = trapezoid_json(q.delta_bl, all);
  j["delta_br"] = trapezoid_json(q.delta_br, all);
  j["delta_3"] = trapezoid_json(q.delta_3, all);
  j["delta_4"] = trapezoid_json(q.delta_4, all);
  for (auto [name, f] : {std::pair{"delta_rl", &q.delta_rl}, std::pair{"delta_rr", &q.delta_rr}}) {
    Json r;
    r["witness"] = point_json(f->witness());
    r["faces"] = f->arrangement.face_count();
    j[name] = std::move(r);
  }
  j["blue_core"] = ids(blue, q.blue_core);
  j["red_core"] = ids(red, q.red_core);
  j["red_before_refinement"] = q.red_before_refinement;
  j["size_bound"] = q.size_bound;
  Json st = Json::array();
  for (const auto& s : q.stages)
    st.push_back({{"name", s.name}, {"curves", s.curves}, {"points", s.points}, {"kept_curves", s.kept_curves},
                  {"kept_points", s.kept_points}, {"trials", s.trials}});
  j["stages"] = std::move(st);
  return j;
}

inline Json two_color_json(const TwoColorCertificate& c, const CurveFamily& blue, const CurveFamily& red) {
  Json j;
  j["version"] = "two-color/1";
  j["relation"] = to_string(c.relation);
  j["blue_out"] = ids(blue, c.blue_out);
  j["red_out"] = ids(red, c.red_out);
  j["case_histogram"] = {{"contained", c.case_histogram[0]}, {"pattern1", c.case_histogram[1]},
                         {"pattern2", c.case_histogram[2]}, {"pattern3", c.case_histogram[3]}};
  if (c.alpha_prime) {
    j["alpha_prime"] = {{"curve", blue[c.alpha_prime->curve].id()},
                        {"points", polyline_json(c.alpha_prime->pts)},
                        {"fallback", c.alpha_prime->fallback}};
  } else {
    j["alpha_prime"] = nullptr;
  }
  j["blue_core"] = c.blue_core;
  j["red_core"] = c.red_core;
  j["r_int"] = c.r_int;
  j["r_dis"] = c.r_dis;
  j["brute_force"] = c.brute_force;
  j["realized_ratio"] = c.realized_ratio();
  return j;
}

inline Json density_json(const DensityCertificate& c, const CurveFamily& f) {
  Json j;
  j["version"] = "density/1";
  j["mode"] = to_string(c.mode);
  j["f1"] = ids(f, c.f1);
  j["f2"] = ids(f, c.f2);
  j["epsilon_in"] = rational_json(c.epsilon_in);
  j["epsilon_ordered"] = rational_json(c.epsilon_ordered);
  j["delta_out"] = c.delta_out;
  j["halving_attempts"] = c.halving_attempts;
  Json tr = Json::array();
  for (const auto& s : c.trace)
    tr.push_back({{"size_a", s.size_a}, {"size_b", s.size_b}, {"density", rational_json(s.density)},
                  {"outcome", s.outcome}, {"c_used", s.c_used}});
  j["trace"] = std::move(tr);
  return j;
}

inline Json relations_json(const TopoGraph& g, const PairRelations& r) {
  Json j;
  j["version"] = "edge-relations/1";
  j["edges"] = r.m;
  j["cross"] = r.cross;
  j["share_vertex"] = r.shared;
  j["disjoint"] = r.disjoint;
  j["disjoint_density"] = rational_json(r.disjoint_density());
  j["disjoint_density_ordered"] = rational_json(r.disjoint_density_ordered());
  Json pairs = Json::array();
  for (std::size_t a = 0; a < r.m; ++a)
    for (std::size_t b = a + 1; b < r.m; ++b) pairs.push_back({g.edges[a].id, g.edges[b].id, to_string(r(a, b))});
  j["pairs"] = std::move(pairs);
  return j;
}

inline Json disjoint_set_json(const TopoGraph& g, const DisjointEdgeSet& s) {
  Json j;
  j["version"] = "disjoint-edges/1";
  j["edges"] = edge_ids(g, s.edges);
  j["size"] = s.edges.size();
  j["max_depth"] = s.max_depth;
  Json tr = Json::array();
  for (const auto& n : s.trace)
    tr.push_back({{"depth", n.depth}, {"edges", n.edges}, {"method", n.method}, {"result", n.result}, {"note", n.note}});
  j["trace"] = std::move(tr);
  return j;
}

inline Json thrackle_json(const TopoGraph& g, const ThrackleCheck& c) {
  Json j;
  j["version"] = "thrackle/1";
  j["thrackle"] = c.thrackle;
  j["witness"] = c.witness ? Json::array({g.edges[c.witness->first].id, g.edges[c.witness->second].id}) : Json(nullptr);
  return j;
}

inline Json redraw_json(const TopoGraph& g, const RedrawReport& r) {
  Json j;
  j["version"] = "redraw-audit/1";
  Json k = Json::object();
  for (std::size_t e = 0; e < g.edges.size(); ++e) k[g.edges[e].id] = r.k[e];
  j["strip_crossings"] = std::move(k);
  Json pairs = Json::array();
  std::size_t crossing_even = 0, crossing = 0;
  for (const auto& p : r.pairs) {
    pairs.push_back({{"edges", {g.edges[p.e1].id, g.edges[p.e2].id}}, {"original", to_string(p.original)},
                     {"new_count", p.new_count}, {"parity", p.even ? "even" : "odd"}});
    if (p.original == EdgeRelation::Cross) {
      ++crossing;
      crossing_even += p.even;
    }
  }
  j["crossing_pairs"] = crossing;
  j["crossing_pairs_even"] = crossing_even;
  j["ocn_upper_bound"] = r.ocn_upper_bound;
  j["odd_pairs"] = r.odd_pairs;
  j["reroutes"] = r.reroutes;
  j["pairs"] = std::move(pairs);
  return j;
}

inline Json bisection_json(const TopoGraph& g, const Bisection& b) {
  Json j;
  j["version"] = "bisection/1";
  Json v1 = Json::array(), v2 = Json::array();
  for (auto v : b.v1) v1.push_back(g.vertices[v].id);
  for (auto v : b.v2) v2.push_back(g.vertices[v].id);
  j["v1"] = std::move(v1);
  j["v2"] = std::move(v2);
  j["cut"] = b.cut;
  return j;
}

}  // namespace mcd::io
