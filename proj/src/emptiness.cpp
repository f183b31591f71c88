#include "clearance/emptiness.hpp"

namespace clearance {

SegmentEmptinessIndex::SegmentEmptinessIndex(const Scene& scene)
    : bvh_(std::make_shared<EdgeBvh>(scene_edges(scene))) {}

SegmentEmptinessIndex::SegmentEmptinessIndex(std::shared_ptr<const EdgeBvh> bvh)
    : bvh_(std::move(bvh)) {}

std::optional<ObstacleHit> SegmentEmptinessIndex::segment_intersects(const Segment& s) const {
  const Point a = s.a();
  const Point b = s.b();
  std::optional<ObstacleHit> hit;
  bvh_->traverse([&](const Box& box) { return box.may_meet_segment(a, b); },
                 [&](const EdgeItem& e) {
                   if (!segments_intersect(a, b, e.a, e.b)) return false;
                   hit = ObstacleHit{e.polygon_id, intersection_point(s, Segment(e.a, e.b))};
                   return true;
                 });
  if (hit) return hit;
  if (auto inside = containing_polygon(*bvh_, a)) return ObstacleHit{inside->id, a};
  return std::nullopt;
}

std::optional<ObstacleHit> SegmentEmptinessIndex::line_intersects(const Line& l) const {
  std::optional<ObstacleHit> hit;
  bvh_->traverse([&](const Box& box) { return box.may_meet_line(l); },
                 [&](const EdgeItem& e) {
                   if (!segment_meets_line(e.a, e.b, l)) return false;
                   const double sa = l.signed_distance(e.a);
                   const double sb = l.signed_distance(e.b);
                   Point p = e.a;
                   if (sb == 0.0) {
                     p = e.b;
                   } else if (sa != 0.0) {
                     p = e.a + (sa / (sa - sb)) * (e.b - e.a);
                   }
                   hit = ObstacleHit{e.polygon_id, p};
                   return true;
                 });
  return hit;
}

}  // namespace clearance
