#include "clearance/oracle.hpp"

namespace clearance {

std::optional<NearestObstacle> oracle_nearest_polygon_to_segment(const Scene& scene,
                                                                 const Segment& s) {
  std::optional<NearestObstacle> best;
  for (const auto& poly : scene.polygons()) {
    NearestObstacle cand{poly.id(), std::numeric_limits<double>::infinity(), {}, {}};
    if (point_in_polygon(s.a(), poly)) {
      cand = {poly.id(), 0.0, s.a(), s.a()};
    } else if (point_in_polygon(s.b(), poly)) {
      cand = {poly.id(), 0.0, s.b(), s.b()};
    } else {
      for (std::size_t e = 0; e < poly.size(); ++e) {
        const auto d = dist_segment_segment(s, poly.edge(e));
        if (d.distance < cand.distance) cand = {poly.id(), d.distance, d.first, d.second};
      }
    }
    if (!best || cand.distance < best->distance ||
        (cand.distance == best->distance && cand.polygon_id < best->polygon_id)) {
      best = cand;
    }
  }
  return best;
}

OracleReport oracle_clearance(const Scene& scene, const PolyPath& path) {
  OracleReport report;
  for (std::size_t i = 0; i < path.segment_count(); ++i) {
    const auto nearest = oracle_nearest_polygon_to_segment(scene, path.segment(i));
    OracleSegmentEntry entry{i, std::numeric_limits<double>::infinity(), std::nullopt};
    if (nearest) {
      entry.clearance = nearest->distance;
      entry.polygon_id = nearest->polygon_id;
      if (nearest->distance < report.min_clearance) {
        report.min_clearance = nearest->distance;
        report.witness = Witness{nearest->query_point, nearest->obstacle_point, nearest->polygon_id};
      }
    }
    report.per_segment.push_back(entry);
  }
  return report;
}

}  // namespace clearance
