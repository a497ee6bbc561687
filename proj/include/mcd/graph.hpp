#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mcd/error.hpp"
#include "mcd/geom.hpp"
#include "mcd/io.hpp"

namespace mcd {

struct TopoVertex {
  std::string id;
  Point p;
};

/// Edge drawn as a simple polyline from vertex u to vertex v. Unlike family
/// curves, edge polylines may contain vertical pieces (strip normal form).
struct TopoEdge {
  std::string id;
  std::size_t u = 0, v = 0;
  Polyline pts;

  bool shares_vertex(const TopoEdge& o) const { return u == o.u || u == o.v || v == o.u || v == o.v; }
};

struct TopoGraph {
  std::vector<TopoVertex> vertices;
  std::vector<TopoEdge> edges;
  bool simple = false;
};

struct GraphCheck {
  bool valid = true;
  bool simple = true;
  std::string reason;
};

/// Checks edge/vertex consistency for a single edge against the vertex set.
inline std::string edge_problem(const TopoGraph& g, const TopoEdge& e) {
  if (e.u >= g.vertices.size() || e.v >= g.vertices.size()) return "edge " + e.id + " has an unknown vertex";
  if (e.u == e.v) return "edge " + e.id + " is a loop";
  if (e.pts.size() < 2 || e.pts.front() != g.vertices[e.u].p || e.pts.back() != g.vertices[e.v].p)
    return "edge " + e.id + " does not run between its vertices";
  if (!is_simple_polyline(e.pts)) return "edge " + e.id + " self-intersects";
  for (std::size_t w = 0; w < g.vertices.size(); ++w) {
    if (w == e.u || w == e.v) continue;
    for (std::size_t s = 0; s + 1 < e.pts.size(); ++s)
      if (on_segment(g.vertices[w].p, e.pts[s], e.pts[s + 1])) return "edge " + e.id + " passes through vertex " + g.vertices[w].id;
  }
  return {};
}

/// Whether two edges meet as a simple drawing allows: adjacent edges only at
/// their common vertex, others in at most one proper crossing.
inline bool edge_pair_simple(const TopoGraph& g, const TopoEdge& a, const TopoEdge& b) {
  std::vector<Contact> cs;
  try {
    cs = polyline_contacts(a.pts, b.pts);
  } catch (const Error&) {
    return false;
  }
  if (a.shares_vertex(b)) {
    if ((a.u == b.u || a.u == b.v) && (a.v == b.u || a.v == b.v)) return false;  // parallel edges
    std::size_t w = (a.u == b.u || a.u == b.v) ? a.u : a.v;
    return cs.size() == 1 && cs[0].p == g.vertices[w].p;
  }
  return cs.size() <= 1 && (cs.empty() || cs[0].kind == ContactKind::Crossing);
}

inline GraphCheck check_graph(const TopoGraph& g) {
  GraphCheck out;
  for (const auto& e : g.edges) {
    std::string why = edge_problem(g, e);
    if (!why.empty()) return GraphCheck{false, false, why};
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j)
      if (!edge_pair_simple(g, g.edges[i], g.edges[j])) {
        out.simple = false;
        out.reason = "edges " + g.edges[i].id + " and " + g.edges[j].id + " violate simplicity";
        return out;
      }
  return out;
}

namespace io {

inline Json topograph_json(const TopoGraph& g) {
  Json j;
  j["version"] = "topograph/1";
  Json vs = Json::array();
  for (const auto& v : g.vertices) {
    Json vj;
    vj["id"] = v.id;
    vj["point"] = point_json(v.p);
    vs.push_back(std::move(vj));
  }
  Json es = Json::array();
  for (const auto& e : g.edges) {
    Json ej;
    ej["id"] = e.id;
    ej["u"] = g.vertices[e.u].id;
    ej["v"] = g.vertices[e.v].id;
    ej["points"] = polyline_json(e.pts);
    es.push_back(std::move(ej));
  }
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  return j;
}

inline TopoGraph topograph_from_json(const Json& j) {
  require_version(j, "topograph/1");
  if (!j.contains("vertices") || !j.contains("edges")) throw Error(ErrorCode::FormatError, "topograph needs vertices and edges");
  TopoGraph g;
  std::map<std::string, std::size_t> index;
  for (const auto& vj : j["vertices"]) {
    if (!vj.contains("id") || !vj["id"].is_string() || !vj.contains("point"))
      throw Error(ErrorCode::FormatError, "vertex needs id and point");
    std::string id = vj["id"].get<std::string>();
    if (!index.emplace(id, g.vertices.size()).second) throw Error(ErrorCode::FormatError, "duplicate vertex " + id);
    g.vertices.push_back({id, point_from_json(vj["point"])});
  }
  for (const auto& ej : j["edges"]) {
    if (!ej.contains("id") || !ej.contains("u") || !ej.contains("v") || !ej.contains("points"))
      throw Error(ErrorCode::FormatError, "edge needs id, u, v, points");
    auto find = [&](const Json& ref) {
      auto it = index.find(ref.get<std::string>());
      if (it == index.end()) throw Error(ErrorCode::FormatError, "unknown vertex " + ref.dump());
      return it->second;
    };
    g.edges.push_back({ej["id"].get<std::string>(), find(ej["u"]), find(ej["v"]), polyline_from_json(ej["points"])});
  }
  GraphCheck c = check_graph(g);
  if (!c.valid) throw Error(ErrorCode::ValidationError, c.reason);
  g.simple = c.simple;
  return g;
}

inline TopoGraph load_topograph(const std::string& path) { return topograph_from_json(parse(read_file(path))); }

}  // namespace io

}  // namespace mcd
