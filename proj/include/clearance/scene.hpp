#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clearance/geometry.hpp"

namespace clearance {

using PolygonId = int;

/// Obstacle polygon with vertices normalized to counterclockwise order.
/// Construction checks the local invariants (vertex count, finite and
/// distinct consecutive vertices, nonzero area); simplicity is checked by
/// validate_scene together with disjointness.
class SimplePolygon {
 public:
  SimplePolygon(PolygonId id, std::vector<Point> vertices);

  PolygonId id() const { return id_; }
  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i]; }
  // Edge i runs from vertex i to vertex i+1 (cyclically).
  Segment edge(std::size_t i) const {
    return Segment(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }

 private:
  PolygonId id_;
  std::vector<Point> vertices_;
};

double signed_area(std::span<const Point> ring);

/// Crossing-number test; points on the boundary may go either way.
bool point_in_polygon(Point p, const SimplePolygon& poly);

/// Validated obstacle set: simple, pairwise disjoint, non-nested polygons with
/// unique ids. Only validate_scene creates one.
class Scene {
 public:
  Scene() = default;

  std::span<const SimplePolygon> polygons() const { return polygons_; }
  const SimplePolygon& polygon(std::size_t index) const { return polygons_[index]; }
  std::size_t polygon_count() const { return polygons_.size(); }  // m
  std::size_t vertex_count() const { return vertex_count_; }      // n
  bool empty() const { return polygons_.empty(); }

 private:
  friend Scene validate_scene(std::vector<SimplePolygon> polygons);
  std::vector<SimplePolygon> polygons_;
  std::size_t vertex_count_ = 0;
};

/// Throws Error{NonSimplePolygon | PolygonsIntersect | DuplicatePolygonId}.
Scene validate_scene(std::vector<SimplePolygon> polygons);

/// Query path; self-intersections are allowed.
class PolyPath {
 public:
  explicit PolyPath(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  Segment segment(std::size_t i) const { return Segment(vertices_[i], vertices_[i + 1]); }

 private:
  std::vector<Point> vertices_;
};

}  // namespace clearance
