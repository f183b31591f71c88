#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "clearance/geometry.hpp"
#include "clearance/scene.hpp"

namespace clearance {

struct Box {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void expand(Point p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  void expand(const Box& b) {
    expand(b.lo);
    expand(b.hi);
  }
  bool overlaps(const Box& b) const {
    return lo.x <= b.hi.x && b.lo.x <= hi.x && lo.y <= b.hi.y && b.lo.y <= hi.y;
  }
  bool contains(Point p) const {
    return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y;
  }
  double distance_to(Point p) const {
    const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
    const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
    return std::hypot(dx, dy);
  }
  // Exact: false only if the closed segment provably misses the closed box.
  bool may_meet_segment(Point a, Point b) const;
  // Conservative against rounding in the line's normalized direction.
  bool may_meet_line(const Line& l) const;
};

/// An obstacle edge tagged with its owner.
struct EdgeItem {
  Point a;
  Point b;
  PolygonId polygon_id = 0;
  std::uint32_t polygon_index = 0;  // position in Scene::polygons()
  std::uint32_t edge_index = 0;     // edge i of that polygon
  std::uint32_t ordinal = 0;        // position in the build input
};

std::vector<EdgeItem> scene_edges(const Scene& scene);
std::vector<EdgeItem> polygon_edges(std::span<const SimplePolygon> polygons);

/// Binary bounding-volume hierarchy over segments, median split on the
/// longest axis of the centroid bounds.
class EdgeBvh {
 public:
  static constexpr std::size_t kDefaultLeafSize = 4;

  struct Node {
    Box box;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t first = 0;
    std::uint32_t count = 0;  // nonzero only for leaves
    bool leaf() const { return count > 0; }
  };

  EdgeBvh() = default;
  explicit EdgeBvh(std::vector<EdgeItem> items, std::size_t leaf_size = kDefaultLeafSize);

  bool empty() const { return nodes_.empty(); }
  std::span<const EdgeItem> items() const { return items_; }
  std::span<const Node> nodes() const { return nodes_; }
  std::size_t leaf_size() const { return leaf_size_; }

  /// Depth-first walk over nodes whose box satisfies `enter(box)`; calls
  /// `visit(item)` for leaf items and stops as soon as it returns true.
  /// Returns whether the walk was stopped.
  template <class Enter, class Visit>
  bool traverse(Enter&& enter, Visit&& visit) const {
    if (nodes_.empty()) return false;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
      const Node& node = nodes_[stack.back()];
      stack.pop_back();
      if (!enter(node.box)) continue;
      if (node.leaf()) {
        for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
          if (visit(items_[i])) return true;
        }
      } else {
        stack.push_back(node.right);
        stack.push_back(node.left);
      }
    }
    return false;
  }

 private:
  std::uint32_t build(std::uint32_t first, std::uint32_t count);

  std::vector<EdgeItem> items_;
  std::vector<Node> nodes_;
  std::size_t leaf_size_ = kDefaultLeafSize;
};

/// Parity of crossings of the ray from `p` towards +x, per polygon index.
/// Returns the polygon index whose interior contains p, if any, skipping the
/// polygon `exclude`. Points on a boundary are not classified reliably.
struct PolygonRef {
  std::uint32_t index = 0;
  PolygonId id = 0;
};

std::optional<PolygonRef> containing_polygon(
    const EdgeBvh& bvh, Point p,
    std::uint32_t exclude = std::numeric_limits<std::uint32_t>::max());

}  // namespace clearance
