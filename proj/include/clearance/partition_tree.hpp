#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "clearance/edge_bvh.hpp"
#include "clearance/geometry.hpp"
#include "clearance/scene.hpp"

namespace clearance {

/// An obstacle vertex with its owner.
struct TaggedPoint {
  Point p;
  PolygonId polygon_id = 0;
  std::uint32_t polygon_index = 0;
  std::uint32_t vertex_index = 0;

  friend bool operator==(const TaggedPoint&, const TaggedPoint&) = default;
};

std::vector<TaggedPoint> scene_vertices(const Scene& scene);

struct SlabQueryResult {
  bool found = false;
  TaggedPoint point;
  double distance = std::numeric_limits<double>::infinity();

  friend bool operator==(const SlabQueryResult&, const SlabQueryResult&) = default;
};

/// Spatial partition of a point set (median splits, alternating x/y) whose
/// upper levels carry the convex hull of their subset.
///
/// Space budget t in [n, n^2]: leaves hold at most max(4, ceil(n / sqrt(t)))
/// points, and whole levels of hulls are stored top-down while the total
/// number of stored hull vertices stays within kBudgetConstant * t.
///
/// Slab queries prune subtrees outside the slab or farther than the best
/// distance so far. A subtree wholly inside the slab and strictly on one side
/// of the query line is answered by one extreme-point search on its hull.
/// Ties resolve to the smaller polygon id, then the smaller vertex index.
class PartitionTree {
 public:
  static constexpr double kBudgetConstant = 1.0;

  struct Node {
    Box box;
    std::uint32_t first = 0;
    std::uint32_t count = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t hull_first = 0;
    std::uint32_t hull_count = 0;  // 0 when no hull is stored
    std::uint32_t depth = 0;
    bool leaf() const { return left == right; }
  };

  struct Stats {
    std::size_t points = 0;
    std::size_t nodes = 0;
    std::size_t leaf_size = 0;
    std::size_t hull_levels = 0;
    std::size_t stored_hull_vertices = 0;
    double budget = 0.0;
  };

  PartitionTree() = default;
  /// Throws Error{InvalidBudget} unless n >= 1 and n <= t <= n^2.
  PartitionTree(std::vector<TaggedPoint> points, double t);

  SlabQueryResult closest_in_slab(const Segment& s) const;
  SlabQueryResult closest_to_line(const Line& l) const;

  const Stats& stats() const { return stats_; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const TaggedPoint> points() const { return points_; }
  /// Stored hull of a node (empty span if none), counterclockwise.
  std::span<const Point> hull(const Node& node) const {
    return std::span<const Point>(hull_points_).subspan(node.hull_first, node.hull_count);
  }

 private:
  std::uint32_t build(std::uint32_t first, std::uint32_t count, std::uint32_t depth,
                      std::size_t leaf_size);
  template <bool kSlab>
  SlabQueryResult query(Point a, Point b) const;

  std::vector<TaggedPoint> points_;
  std::vector<Node> nodes_;
  std::vector<Point> hull_points_;
  std::vector<std::uint32_t> hull_tags_;  // index into points_ per hull vertex
  Stats stats_;
};

}  // namespace clearance
