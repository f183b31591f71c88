#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "clearance/geometry.hpp"
#include "clearance/scene.hpp"

namespace clearance {

enum class Location { FreeSpace, Inside, OnBoundary };

struct LocateResult {
  Location kind = Location::FreeSpace;
  std::optional<PolygonId> polygon_id;

  friend bool operator==(const LocateResult&, const LocateResult&) = default;
};

/// Randomized incremental trapezoidal map over all obstacle edges with its
/// history DAG as the search structure. Equal x-coordinates are handled by
/// lexicographic order (a symbolic shear), so vertical edges and shared
/// abscissae need no special casing.
///
/// A trapezoid lies inside polygon P exactly when its bottom edge belongs to
/// P with P's interior above it. Points within `boundary_tolerance` of an
/// edge are reported as OnBoundary; that check walks the neighbouring
/// trapezoids whose walls are within the tolerance disk.
class PointLocationIndex {
 public:
  static constexpr double kBoundaryTolerance = 1e-9;
  static constexpr std::uint64_t kDefaultSeed = 0x5eed'1234'abcdULL;

  PointLocationIndex();
  explicit PointLocationIndex(const Scene& scene, double boundary_tolerance = kBoundaryTolerance,
                              std::uint64_t seed = kDefaultSeed);

  LocateResult locate(Point p) const;

  std::size_t edge_count() const { return edges_.size(); }
  std::size_t trapezoid_count() const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t depth() const;

  /// Structural consistency (neighbour symmetry, ordering of walls); used by tests.
  bool self_check() const;

 private:
  static constexpr std::int32_t kNone = -1;

  struct Edge {
    Point p;  // lexicographically smaller endpoint
    Point q;
    PolygonId polygon_id;
    bool interior_above;
  };

  struct Trapezoid {
    std::int32_t top = kNone;     // edge index; kNone = unbounded
    std::int32_t bottom = kNone;
    Point leftp;
    Point rightp;
    bool has_left = false;  // false = extends to -infinity
    bool has_right = false;
    // A single neighbour on a side occupies both slots.
    std::int32_t upper_left = kNone;
    std::int32_t lower_left = kNone;
    std::int32_t upper_right = kNone;
    std::int32_t lower_right = kNone;
    std::int32_t node = kNone;
    bool alive = true;
  };

  enum class NodeKind : std::uint8_t { XNode, YNode, Leaf };

  struct Node {
    NodeKind kind = NodeKind::Leaf;
    Point point;               // XNode
    std::int32_t index = 0;    // YNode: edge, Leaf: trapezoid
    std::int32_t left = kNone;   // XNode: lex-smaller side, YNode: above
    std::int32_t right = kNone;  // XNode: lex-greater-or-equal side, YNode: below
  };

  void insert(std::int32_t edge);
  std::int32_t find(Point p, const Edge* inserting) const;
  std::int32_t new_trapezoid(std::int32_t top, std::int32_t bottom);
  std::int32_t leaf_for(std::int32_t trap);
  void replace_right(std::int32_t trap, std::int32_t old_id, std::int32_t new_id);
  void replace_left(std::int32_t trap, std::int32_t old_id, std::int32_t new_id);
  bool above(const Edge& e, Point r) const;
  std::optional<std::pair<double, PolygonId>> nearby_boundary(Point p, std::int32_t start) const;

  std::vector<Edge> edges_;
  std::vector<Trapezoid> traps_;
  std::vector<Node> nodes_;
  double tolerance_ = kBoundaryTolerance;
};

}  // namespace clearance
