#pragma once

#include <cstdint>
#include <memory>

#include "clearance/edge_bvh.hpp"
#include "clearance/geometry.hpp"
#include "clearance/scene.hpp"

namespace clearance {

struct NearestSite {
  PolygonId polygon_id = 0;
  std::uint32_t edge_index = 0;
  double distance = 0.0;
  Point witness;  // closest point on the edge

  friend bool operator==(const NearestSite&, const NearestSite&) = default;
};

/// Closest obstacle edge to a query point: branch-and-bound over the edge
/// hierarchy, nearer child first, pruning boxes farther than the best exact
/// distance found so far. Ties resolve to the smaller polygon id, then the
/// smaller edge index.
class NearestSiteIndex {
 public:
  NearestSiteIndex() = default;
  explicit NearestSiteIndex(const Scene& scene);
  explicit NearestSiteIndex(std::shared_ptr<const EdgeBvh> bvh);

  /// Throws Error{EmptyScene} when there are no obstacles.
  NearestSite nearest_polygon_to_point(Point q) const;

  const EdgeBvh& bvh() const { return *bvh_; }

 private:
  std::shared_ptr<const EdgeBvh> bvh_ = std::make_shared<EdgeBvh>();
};

}  // namespace clearance
