#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clearance/edge_bvh.hpp"
#include "clearance/emptiness.hpp"
#include "clearance/geometry.hpp"
#include "clearance/nearest_site.hpp"
#include "clearance/oracle.hpp"
#include "clearance/partition_tree.hpp"
#include "clearance/point_location.hpp"
#include "clearance/scene.hpp"

namespace clearance {

/// Space budget as a function of n: "n", "n^<e>" with 1 <= e <= 2, or
/// "n2cap:<bytes>" meaning n^2 capped by a byte allowance for stored hulls.
class TPolicy {
 public:
  static constexpr std::size_t kBytesPerHullVertex = sizeof(Point) + sizeof(std::uint32_t);

  TPolicy() = default;
  /// Throws Error{InvalidBudget} on an unknown or out-of-range formula.
  static TPolicy parse(std::string_view text);

  /// Budget for n points, always within [n, n^2].
  double budget(std::size_t n) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_ = "n^1.5";
  double exponent_ = 1.5;
  std::optional<std::uint64_t> cap_bytes_;
};

struct IndexConfig {
  TPolicy t_policy;
  double boundary_tolerance = PointLocationIndex::kBoundaryTolerance;
  // Stop the proximity steps once the running minimum drops below c.
  bool verdict_only = false;
  // Evaluate the proximity steps of a path on several threads.
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
  std::size_t bvh_leaf_size = EdgeBvh::kDefaultLeafSize;
};

struct BuildStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double t = 0.0;
  double build_ms = 0.0;
  double point_location_ms = 0.0;
  double bvh_ms = 0.0;
  double partition_ms = 0.0;
  std::size_t trapezoids = 0;
  std::size_t dag_nodes = 0;
  std::size_t dag_depth = 0;
  std::size_t bvh_nodes = 0;
  std::size_t tree_nodes = 0;
  std::size_t leaf_size = 0;
  std::size_t hull_levels = 0;
  std::size_t stored_hull_vertices = 0;
  double hull_budget = 0.0;  // kBudgetConstant * t
  std::size_t memory_bytes = 0;
};

enum class Verdict { HasClearance, Violated };

std::string_view to_string(Verdict v);

struct SegmentClearance {
  std::size_t segment = 0;
  double clearance = std::numeric_limits<double>::infinity();
  std::optional<PolygonId> polygon_id;

  friend bool operator==(const SegmentClearance&, const SegmentClearance&) = default;
};

struct ClearanceReport {
  Verdict verdict = Verdict::HasClearance;
  // +infinity when the scene is empty.
  double min_clearance = std::numeric_limits<double>::infinity();
  double clearance_param = 0.0;
  std::optional<Witness> witness;
  // One entry per path segment, empty after an early exit.
  std::vector<SegmentClearance> per_segment;
  bool intersection = false;
  // False when verdict-only mode stopped early; min_clearance is then only an
  // upper bound that is already below c.
  bool exact = true;

  friend bool operator==(const ClearanceReport&, const ClearanceReport&) = default;
};

/// Answer of a nearest-obstacle query. `hit` means the query object meets the
/// obstacle, with distance 0 and both witness points at a common point.
struct NearestResult {
  bool hit = false;
  PolygonId polygon_id = 0;
  double distance = 0.0;
  Point query_point;
  Point obstacle_point;

  friend bool operator==(const NearestResult&, const NearestResult&) = default;
};

/// Immutable bundle of the four query structures over one scene: point
/// location, segment emptiness, nearest edge to a point, and closest vertex
/// in a slab. All queries are const and safe to run concurrently.
class SceneIndex {
 public:
  static SceneIndex build(Scene scene, const IndexConfig& config = {});

  const Scene& scene() const { return *scene_; }
  const IndexConfig& config() const { return config_; }
  const BuildStats& stats() const { return stats_; }

  const PointLocationIndex& point_location() const { return *d1_; }
  const SegmentEmptinessIndex& emptiness() const { return *d2_; }
  const NearestSiteIndex& nearest_site() const { return *d3_; }
  const PartitionTree& partition_tree() const { return *d4_; }

  /// Throws Error{EmptyScene} when there are no obstacles.
  NearestResult nearest_polygon_to_line(const Line& l) const;
  /// Throws Error{EmptyScene} when there are no obstacles.
  NearestResult nearest_polygon_to_segment(const Segment& s) const;

  /// Throws Error{InvalidClearance} unless c is finite and positive.
  ClearanceReport path_clearance(const PolyPath& path, double c) const;
  ClearanceReport path_clearance(const PolyPath& path, double c, const IndexConfig& config) const;
  double min_clearance(const PolyPath& path) const;

 private:
  SceneIndex() = default;
  ClearanceReport evaluate(const PolyPath& path, double c, bool verdict_only,
                           bool parallel, unsigned threads) const;

  std::shared_ptr<const Scene> scene_;
  std::shared_ptr<const PointLocationIndex> d1_;
  std::shared_ptr<const SegmentEmptinessIndex> d2_;
  std::shared_ptr<const NearestSiteIndex> d3_;
  std::shared_ptr<const PartitionTree> d4_;
  IndexConfig config_;
  BuildStats stats_;
};

}  // namespace clearance
