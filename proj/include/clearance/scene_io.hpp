#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "clearance/engine.hpp"
#include "clearance/error.hpp"
#include "clearance/scene.hpp"

namespace clearance {

using Json = nlohmann::json;

/// Scene document: {"version": 1, "polygons": [{"id": 0, "vertices": [[x, y], ...]}, ...]}.
/// Throws Error{ParseError} naming the offending field, or the validation
/// error of the geometry.
Scene scene_from_json(const Json& doc);
Json scene_to_json(const Scene& scene);

/// Path document: {"vertices": [[x, y], ...], "c": optional positive number}.
struct PathFile {
  PolyPath path;
  std::optional<double> c;
};
PathFile path_from_json(const Json& doc);

Point point_from_json(const Json& v, const std::string& field);
PolyPath path_from_vertices(const Json& v, const std::string& field);
Segment segment_from_json(const Json& v, const std::string& field);

/// Reads and parses a JSON file; throws Error{ParseError}.
Json read_json_file(const std::filesystem::path& file);
Json parse_json(const std::string& text);

/// Distances serialize as numbers; +infinity becomes the string "unbounded".
Json distance_to_json(double d);
Json point_to_json(Point p);

Json report_to_json(const ClearanceReport& report);
Json nearest_to_json(const NearestResult& result);
Json stats_to_json(const BuildStats& stats, const std::string& t_policy);
Json error_to_json(const Error& e);

/// Compact canonical text used by the CLI and the service.
std::string to_text(const Json& doc);

}  // namespace clearance
