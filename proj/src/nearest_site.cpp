#include "clearance/nearest_site.hpp"

#include <limits>
#include <tuple>
#include <vector>

#include "clearance/error.hpp"

namespace clearance {

NearestSiteIndex::NearestSiteIndex(const Scene& scene)
    : bvh_(std::make_shared<EdgeBvh>(scene_edges(scene))) {}

NearestSiteIndex::NearestSiteIndex(std::shared_ptr<const EdgeBvh> bvh) : bvh_(std::move(bvh)) {}

NearestSite NearestSiteIndex::nearest_polygon_to_point(Point q) const {
  if (bvh_->empty()) throw Error(ErrorKind::EmptyScene, "scene has no obstacles");
  const auto nodes = bvh_->nodes();
  const auto items = bvh_->items();

  NearestSite best{0, 0, std::numeric_limits<double>::infinity(), {}};
  auto better = [&best](double d, PolygonId id, std::uint32_t edge) {
    return std::tie(d, id, edge) < std::tie(best.distance, best.polygon_id, best.edge_index);
  };

  struct Entry {
    std::uint32_t node;
    double bound;
  };
  std::vector<Entry> stack{{0, nodes[0].box.distance_to(q)}};
  while (!stack.empty()) {
    const Entry top = stack.back();
    stack.pop_back();
    if (top.bound > best.distance) continue;
    const auto& node = nodes[top.node];
    if (node.leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const auto& e = items[i];
        const auto r = dist_point_segment(q, Segment(e.a, e.b));
        if (better(r.distance, e.polygon_id, e.edge_index)) {
          best = {e.polygon_id, e.edge_index, r.distance, r.closest};
        }
      }
      continue;
    }
    const double dl = nodes[node.left].box.distance_to(q);
    const double dr = nodes[node.right].box.distance_to(q);
    // Push the farther child first so the nearer one is explored first.
    if (dl <= dr) {
      stack.push_back({node.right, dr});
      stack.push_back({node.left, dl});
    } else {
      stack.push_back({node.left, dl});
      stack.push_back({node.right, dr});
    }
  }
  return best;
}

}  // namespace clearance
