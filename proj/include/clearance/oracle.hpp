#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "clearance/geometry.hpp"
#include "clearance/scene.hpp"

namespace clearance {

/// Pair of points realizing a clearance value.
struct Witness {
  Point path_point;
  Point obstacle_point;
  PolygonId polygon_id = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct NearestObstacle {
  PolygonId polygon_id = 0;
  double distance = 0.0;
  Point query_point;     // on the query segment
  Point obstacle_point;  // on or inside the obstacle

  friend bool operator==(const NearestObstacle&, const NearestObstacle&) = default;
};

struct OracleSegmentEntry {
  std::size_t segment = 0;
  double clearance = std::numeric_limits<double>::infinity();
  std::optional<PolygonId> polygon_id;
};

struct OracleReport {
  // +infinity for an empty scene.
  double min_clearance = std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;
  std::vector<OracleSegmentEntry> per_segment;
};

/// Linear scan over every obstacle edge: zero when the segment touches a
/// boundary or lies inside a polygon. Equidistant obstacles resolve to the
/// smallest id. Returns nullopt for an empty scene.
std::optional<NearestObstacle> oracle_nearest_polygon_to_segment(const Scene& scene,
                                                                 const Segment& s);

/// Brute-force clearance: every (path segment, obstacle edge) pair, Theta(nk).
OracleReport oracle_clearance(const Scene& scene, const PolyPath& path);

}  // namespace clearance
