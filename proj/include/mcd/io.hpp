#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcd/curve.hpp"
#include "mcd/error.hpp"

namespace mcd::io {

using Json = nlohmann::ordered_json;

inline Json point_json(const Point& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

inline Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw Error(ErrorCode::FormatError, "point must be a pair of rational strings");
  return Point{parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
}

inline Json polyline_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return arr;
}

inline std::vector<Point> polyline_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::FormatError, "points must be an array");
  std::vector<Point> pts;
  for (const auto& e : j) pts.push_back(point_from_json(e));
  return pts;
}

/// Canonical text: two-space indentation and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
}

inline void require_version(const Json& j, const char* version) {
  if (!j.is_object() || !j.contains("version") || j["version"] != version)
    throw Error(ErrorCode::FormatError, std::string("expected version ") + version);
}

inline Json curveset_json(const CurveFamily& f) {
  Json j;
  j["version"] = "curveset/1";
  j["t"] = f.t;
  Json curves = Json::array();
  for (const auto& c : f.curves) {
    Json cj;
    cj["id"] = c.id();
    cj["points"] = polyline_json(c.vertices());
    curves.push_back(std::move(cj));
  }
  j["curves"] = std::move(curves);
  return j;
}

inline CurveFamily curveset_from_json(const Json& j) {
  require_version(j, "curveset/1");
  if (!j.contains("t") || !j["t"].is_number_integer() || j["t"].get<int>() < 1)
    throw Error(ErrorCode::FormatError, "curveset needs a positive integer t");
  int t = j["t"].get<int>();
  if (!j.contains("curves") || !j["curves"].is_array()) throw Error(ErrorCode::FormatError, "curveset needs curves");
  std::vector<TMonotoneCurve> curves;
  for (const auto& c : j["curves"]) {
    if (!c.contains("id") || !c["id"].is_string() || !c.contains("points"))
      throw Error(ErrorCode::FormatError, "curve needs id and points");
    curves.emplace_back(c["id"].get<std::string>(), polyline_from_json(c["points"]), t);
  }
  CurveFamily f = CurveFamily::from(std::move(curves));
  f.t = t;
  return f;
}

inline Json pointset_json(const std::vector<Point>& pts) {
  Json j;
  j["version"] = "pointset/1";
  j["points"] = polyline_json(pts);
  return j;
}

inline std::vector<Point> pointset_from_json(const Json& j) {
  require_version(j, "pointset/1");
  if (!j.contains("points")) throw Error(ErrorCode::FormatError, "pointset needs points");
  return polyline_from_json(j["points"]);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FormatError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  out << text;
}

inline CurveFamily load_curveset(const std::string& path) { return curveset_from_json(parse(read_file(path))); }
inline std::vector<Point> load_pointset(const std::string& path) { return pointset_from_json(parse(read_file(path))); }

}  // namespace mcd::io
