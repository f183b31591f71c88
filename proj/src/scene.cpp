#include "clearance/scene.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "clearance/edge_bvh.hpp"
#include "clearance/error.hpp"

namespace clearance {

double signed_area(std::span<const Point> ring) {
  double twice = 0.0;
  const std::size_t h = ring.size();
  for (std::size_t i = 0; i < h; ++i) twice += cross(ring[i], ring[(i + 1) % h]);
  return 0.5 * twice;
}

SimplePolygon::SimplePolygon(PolygonId id, std::vector<Point> vertices)
    : id_(id), vertices_(std::move(vertices)) {
  const auto fail = [id](const std::string& why) {
    throw Error(ErrorKind::DegenerateVertexRun,
                "polygon " + std::to_string(id) + ": " + why, {id});
  };
  if (vertices_.size() < 3) fail("fewer than 3 vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw Error(ErrorKind::InvalidGeometry,
                  "polygon " + std::to_string(id) + ": non-finite vertex", {id});
    }
    if (vertices_[i] == vertices_[(i + 1) % vertices_.size()]) fail("repeated consecutive vertex");
  }
  const double area = signed_area(vertices_);
  if (area == 0.0) {
    // A self-crossing ring can cancel its own area; report it as non-simple.
    const std::size_t h = vertices_.size();
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = i + 2; j < h; ++j) {
        if (i == 0 && j == h - 1) continue;
        if (segments_intersect(vertices_[i], vertices_[(i + 1) % h], vertices_[j],
                               vertices_[(j + 1) % h])) {
          throw Error(ErrorKind::NonSimplePolygon,
                      "polygon " + std::to_string(id) + ": edges cross", {id});
        }
      }
    }
    fail("zero area");
  }
  if (area < 0.0) std::reverse(vertices_.begin() + 1, vertices_.end());
}

bool point_in_polygon(Point p, const SimplePolygon& poly) {
  bool inside = false;
  const std::size_t h = poly.size();
  for (std::size_t i = 0; i < h; ++i) {
    const Point a = poly.vertex(i);
    const Point b = poly.vertex((i + 1) % h);
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

namespace {

bool on_segment_collinear(Point p, Point q, Point r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

// Edges e and f of one polygon, f == e+1 cyclically, share vertex v = e.b = f.a.
// They are properly joined unless they fold back over each other.
bool adjacent_edges_overlap(const EdgeItem& e, const EdgeItem& f) {
  if (orientation(e.a, e.b, f.b) != 0) return false;
  return on_segment_collinear(e.a, e.b, f.b) || on_segment_collinear(f.a, f.b, e.a);
}

[[noreturn]] void throw_non_simple(PolygonId id) {
  throw Error(ErrorKind::NonSimplePolygon,
              "polygon " + std::to_string(id) + " is not simple", {id});
}

[[noreturn]] void throw_intersect(PolygonId a, PolygonId b) {
  const PolygonId lo = std::min(a, b);
  const PolygonId hi = std::max(a, b);
  throw Error(ErrorKind::PolygonsIntersect,
              "polygons " + std::to_string(lo) + " and " + std::to_string(hi) + " intersect",
              {lo, hi});
}

}  // namespace

Scene validate_scene(std::vector<SimplePolygon> polygons) {
  std::set<PolygonId> ids;
  for (const auto& poly : polygons) {
    if (!ids.insert(poly.id()).second) {
      throw Error(ErrorKind::DuplicatePolygonId,
                  "duplicate polygon id " + std::to_string(poly.id()), {poly.id()});
    }
  }

  const auto items = polygon_edges(polygons);
  const EdgeBvh bvh(items);
  for (const auto& e : items) {
    Box box;
    box.expand(e.a);
    box.expand(e.b);
    bvh.traverse([&box](const Box& b) { return b.overlaps(box); },
                 [&](const EdgeItem& f) {
                   if (f.ordinal <= e.ordinal) return false;
                   if (!segments_intersect(e.a, e.b, f.a, f.b)) return false;
                   if (f.polygon_index != e.polygon_index) throw_intersect(e.polygon_id, f.polygon_id);
                   const std::size_t h = polygons[e.polygon_index].size();
                   if ((e.edge_index + 1) % h == f.edge_index) {
                     if (adjacent_edges_overlap(e, f)) throw_non_simple(e.polygon_id);
                   } else if ((f.edge_index + 1) % h == e.edge_index) {
                     if (adjacent_edges_overlap(f, e)) throw_non_simple(e.polygon_id);
                   } else {
                     throw_non_simple(e.polygon_id);
                   }
                   return false;
                 });
  }

  // No boundaries cross, so nesting is the only remaining overlap.
  for (std::uint32_t pi = 0; pi < polygons.size(); ++pi) {
    if (auto outer = containing_polygon(bvh, polygons[pi].vertex(0), pi)) {
      throw_intersect(polygons[pi].id(), outer->id);
    }
  }

  Scene scene;
  for (const auto& poly : polygons) scene.vertex_count_ += poly.size();
  scene.polygons_ = std::move(polygons);
  return scene;
}

PolyPath::PolyPath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw Error(ErrorKind::InvalidGeometry, "path needs at least 2 vertices");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw Error(ErrorKind::InvalidGeometry, "path vertex " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && vertices_[i] == vertices_[i - 1]) {
      throw Error(ErrorKind::InvalidGeometry,
                  "path vertex " + std::to_string(i) + " repeats its predecessor");
    }
  }
}

}  // namespace clearance
