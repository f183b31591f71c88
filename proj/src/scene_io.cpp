#include "clearance/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace clearance {

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, field + ": " + what, {}, field);
}

const Json& member(const Json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) parse_fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(field + "." + key, "missing");
  return *it;
}

double number(const Json& v, const std::string& field) {
  if (!v.is_number()) parse_fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_fail(field, "not finite");
  return d;
}

std::vector<Point> points(const Json& v, const std::string& field) {
  if (!v.is_array()) parse_fail(field, "expected an array of [x, y] pairs");
  std::vector<Point> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(point_from_json(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Point point_from_json(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) parse_fail(field, "expected [x, y]");
  return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

PolyPath path_from_vertices(const Json& v, const std::string& field) {
  auto pts = points(v, field);
  try {
    return PolyPath(std::move(pts));
  } catch (const Error& e) {
    throw Error(e.kind(), field + ": " + e.what(), {}, field);
  }
}

Segment segment_from_json(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) parse_fail(field, "expected [[x, y], [x, y]]");
  const Point a = point_from_json(v[0], field + "[0]");
  const Point b = point_from_json(v[1], field + "[1]");
  try {
    return Segment(a, b);
  } catch (const Error& e) {
    throw Error(e.kind(), field + ": " + e.what(), {}, field);
  }
}

Scene scene_from_json(const Json& doc) {
  if (!doc.is_object()) parse_fail("$", "expected an object");
  if (auto it = doc.find("version"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<long long>() != 1) {
      parse_fail("version", "unsupported version (expected 1)");
    }
  }
  const Json& polys = member(doc, "polygons", "$");
  if (!polys.is_array()) parse_fail("polygons", "expected an array");
  std::vector<SimplePolygon> out;
  out.reserve(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const std::string field = "polygons[" + std::to_string(i) + "]";
    const Json& id = member(polys[i], "id", field);
    if (!id.is_number_integer()) parse_fail(field + ".id", "expected an integer");
    const auto id_value = id.get<long long>();
    if (id_value < std::numeric_limits<PolygonId>::min() ||
        id_value > std::numeric_limits<PolygonId>::max()) {
      parse_fail(field + ".id", "out of range");
    }
    out.emplace_back(static_cast<PolygonId>(id_value),
                     points(member(polys[i], "vertices", field), field + ".vertices"));
  }
  return validate_scene(std::move(out));
}

Json point_to_json(Point p) { return Json::array({p.x, p.y}); }

Json scene_to_json(const Scene& scene) {
  Json polys = Json::array();
  for (const auto& poly : scene.polygons()) {
    Json verts = Json::array();
    for (const Point p : poly.vertices()) verts.push_back(point_to_json(p));
    polys.push_back({{"id", poly.id()}, {"vertices", std::move(verts)}});
  }
  return {{"version", 1}, {"polygons", std::move(polys)}};
}

PathFile path_from_json(const Json& doc) {
  PathFile out{path_from_vertices(member(doc, "vertices", "$"), "vertices"), std::nullopt};
  if (auto it = doc.find("c"); it != doc.end() && !it->is_null()) out.c = number(*it, "c");
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what(), {}, "$");
  }
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error(ErrorKind::ParseError, "cannot open " + file.string(), {}, "$");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json distance_to_json(double d) {
  if (std::isinf(d)) return "unbounded";
  return d;
}

Json report_to_json(const ClearanceReport& report) {
  Json segs = Json::array();
  for (const auto& s : report.per_segment) {
    segs.push_back({{"segment", s.segment},
                    {"clearance", distance_to_json(s.clearance)},
                    {"polygon_id", s.polygon_id ? Json(*s.polygon_id) : Json(nullptr)}});
  }
  Json witness = nullptr;
  if (report.witness) {
    witness = {{"path_point", point_to_json(report.witness->path_point)},
               {"obstacle_point", point_to_json(report.witness->obstacle_point)},
               {"polygon_id", report.witness->polygon_id}};
  }
  return {{"verdict", std::string(to_string(report.verdict))},
          {"min_clearance", distance_to_json(report.min_clearance)},
          {"c", report.clearance_param},
          {"intersection", report.intersection},
          {"exact", report.exact},
          {"witness", std::move(witness)},
          {"per_segment", std::move(segs)}};
}

Json nearest_to_json(const NearestResult& r) {
  return {{"hit", r.hit},
          {"polygon_id", r.polygon_id},
          {"distance", distance_to_json(r.distance)},
          {"query_point", point_to_json(r.query_point)},
          {"obstacle_point", point_to_json(r.obstacle_point)}};
}

Json stats_to_json(const BuildStats& s, const std::string& t_policy) {
  return {{"n", s.n},
          {"m", s.m},
          {"t_policy", t_policy},
          {"t", s.t},
          {"build_ms", s.build_ms},
          {"point_location_ms", s.point_location_ms},
          {"bvh_ms", s.bvh_ms},
          {"partition_ms", s.partition_ms},
          {"trapezoids", s.trapezoids},
          {"dag_nodes", s.dag_nodes},
          {"dag_depth", s.dag_depth},
          {"bvh_nodes", s.bvh_nodes},
          {"tree_nodes", s.tree_nodes},
          {"leaf_size", s.leaf_size},
          {"hull_levels", s.hull_levels},
          {"stored_hull_vertices", s.stored_hull_vertices},
          {"hull_budget", s.hull_budget},
          {"within_budget", static_cast<double>(s.stored_hull_vertices) <= s.hull_budget},
          {"memory_bytes", s.memory_bytes}};
}

Json error_to_json(const Error& e) {
  Json out = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (!e.polygon_ids().empty()) out["polygon_ids"] = e.polygon_ids();
  if (!e.field().empty()) out["field"] = e.field();
  return out;
}

std::string to_text(const Json& doc) { return doc.dump(); }

}  // namespace clearance
