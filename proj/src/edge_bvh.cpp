#include "clearance/edge_bvh.hpp"

#include <map>
#include <numeric>

namespace clearance {

bool Box::may_meet_segment(Point a, Point b) const {
  Box seg;
  seg.expand(a);
  seg.expand(b);
  if (!overlaps(seg)) return false;
  const Point corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  int pos = 0;
  int neg = 0;
  for (Point c : corners) {
    const int o = orientation(a, b, c);
    pos += o > 0;
    neg += o < 0;
  }
  return pos < 4 && neg < 4;
}

bool Box::may_meet_line(const Line& l) const {
  const Point corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  const Point anchor = l.anchor();
  bool pos = false;
  bool neg = false;
  for (Point c : corners) {
    const double s = l.signed_distance(c);
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(c.x) + std::abs(c.y) + std::abs(anchor.x) + std::abs(anchor.y));
    if (s >= -slack) pos = true;
    if (s <= slack) neg = true;
  }
  return pos && neg;
}

std::vector<EdgeItem> polygon_edges(std::span<const SimplePolygon> polygons) {
  std::vector<EdgeItem> items;
  std::size_t total = 0;
  for (const auto& poly : polygons) total += poly.size();
  items.reserve(total);
  for (std::uint32_t pi = 0; pi < polygons.size(); ++pi) {
    const auto& poly = polygons[pi];
    const std::size_t h = poly.size();
    for (std::uint32_t e = 0; e < h; ++e) {
      items.push_back(EdgeItem{poly.vertex(e), poly.vertex((e + 1) % h), poly.id(), pi, e,
                               static_cast<std::uint32_t>(items.size())});
    }
  }
  return items;
}

std::vector<EdgeItem> scene_edges(const Scene& scene) { return polygon_edges(scene.polygons()); }

EdgeBvh::EdgeBvh(std::vector<EdgeItem> items, std::size_t leaf_size)
    : items_(std::move(items)), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  if (items_.empty()) return;
  nodes_.reserve(2 * items_.size() / leaf_size_ + 1);
  build(0, static_cast<std::uint32_t>(items_.size()));
}

std::uint32_t EdgeBvh::build(std::uint32_t first, std::uint32_t count) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Box box;
  Box centroids;
  for (std::uint32_t i = first; i < first + count; ++i) {
    box.expand(items_[i].a);
    box.expand(items_[i].b);
    centroids.expand(0.5 * (items_[i].a + items_[i].b));
  }
  nodes_[index].box = box;
  if (count <= leaf_size_) {
    nodes_[index].first = first;
    nodes_[index].count = count;
    return index;
  }
  const bool split_x = (centroids.hi.x - centroids.lo.x) >= (centroids.hi.y - centroids.lo.y);
  const std::uint32_t half = count / 2;
  auto begin = items_.begin() + first;
  std::nth_element(begin, begin + half, begin + count, [split_x](const EdgeItem& l, const EdgeItem& r) {
    const double cl = split_x ? l.a.x + l.b.x : l.a.y + l.b.y;
    const double cr = split_x ? r.a.x + r.b.x : r.a.y + r.b.y;
    return cl < cr || (cl == cr && l.ordinal < r.ordinal);
  });
  const std::uint32_t left = build(first, half);
  const std::uint32_t right = build(first + half, count - half);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

std::optional<PolygonRef> containing_polygon(const EdgeBvh& bvh, Point p, std::uint32_t exclude) {
  std::map<std::uint32_t, std::pair<unsigned, PolygonId>> crossings;
  bvh.traverse(
      [p](const Box& b) { return b.hi.x >= p.x && b.lo.y <= p.y && p.y <= b.hi.y; },
      [&](const EdgeItem& e) {
        if (e.polygon_index != exclude && (e.a.y > p.y) != (e.b.y > p.y)) {
          const int o = orientation(e.a, e.b, p);
          // p strictly left of an upward edge, or strictly right of a downward one.
          if ((e.a.y < e.b.y) ? o > 0 : o < 0) {
            auto& entry = crossings[e.polygon_index];
            ++entry.first;
            entry.second = e.polygon_id;
          }
        }
        return false;
      });
  for (const auto& [index, entry] : crossings) {
    if (entry.first % 2 == 1) return PolygonRef{index, entry.second};
  }
  return std::nullopt;
}

}  // namespace clearance
