#pragma once

#include <memory>
#include <optional>

#include "clearance/edge_bvh.hpp"
#include "clearance/geometry.hpp"
#include "clearance/scene.hpp"

namespace clearance {

/// A polygon met by a query object, with a point common to both.
struct ObstacleHit {
  PolygonId polygon_id = 0;
  Point point;

  friend bool operator==(const ObstacleHit&, const ObstacleHit&) = default;
};

/// Emptiness queries over all obstacle edges: does a segment or line meet any
/// obstacle? Touching counts. A segment lying wholly inside a polygon is a hit
/// as well, found by ray parity from its first endpoint.
class SegmentEmptinessIndex {
 public:
  SegmentEmptinessIndex() = default;
  explicit SegmentEmptinessIndex(const Scene& scene);
  explicit SegmentEmptinessIndex(std::shared_ptr<const EdgeBvh> bvh);

  std::optional<ObstacleHit> segment_intersects(const Segment& s) const;
  std::optional<ObstacleHit> line_intersects(const Line& l) const;

  const EdgeBvh& bvh() const { return *bvh_; }

 private:
  std::shared_ptr<const EdgeBvh> bvh_ = std::make_shared<EdgeBvh>();
};

}  // namespace clearance
