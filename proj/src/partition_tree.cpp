#include "clearance/partition_tree.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "clearance/convex_hull.hpp"
#include "clearance/error.hpp"

namespace clearance {

std::vector<TaggedPoint> scene_vertices(const Scene& scene) {
  std::vector<TaggedPoint> out;
  out.reserve(scene.vertex_count());
  const auto polys = scene.polygons();
  for (std::uint32_t pi = 0; pi < polys.size(); ++pi) {
    for (std::uint32_t vi = 0; vi < polys[pi].size(); ++vi) {
      out.push_back({polys[pi].vertex(vi), polys[pi].id(), pi, vi});
    }
  }
  return out;
}

PartitionTree::PartitionTree(std::vector<TaggedPoint> points, double t)
    : points_(std::move(points)) {
  const double n = static_cast<double>(points_.size());
  if (points_.empty() || !(t >= n * (1.0 - 1e-12)) || !(t <= n * n * (1.0 + 1e-12))) {
    throw Error(ErrorKind::InvalidBudget,
                "space budget t=" + std::to_string(t) + " outside [n, n^2] for n=" +
                    std::to_string(points_.size()));
  }
  for (const auto& tp : points_) {
    if (!is_finite(tp.p)) throw Error(ErrorKind::InvalidGeometry, "non-finite point");
  }
  const auto leaf_size = std::max<std::size_t>(
      4, static_cast<std::size_t>(std::ceil(n / std::sqrt(t))));
  nodes_.reserve(2 * points_.size() / leaf_size + 2);
  build(0, static_cast<std::uint32_t>(points_.size()), 0, leaf_size);

  // Hull of every node, bottom-up: the hull of a union is the hull of the
  // children's hull vertices. Children always follow their parent.
  std::vector<std::vector<std::uint32_t>> hulls(nodes_.size());
  std::vector<Point> scratch;
  for (std::size_t k = nodes_.size(); k-- > 0;) {
    const Node& node = nodes_[k];
    std::vector<std::uint32_t> candidates;
    if (node.leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) candidates.push_back(i);
    } else {
      candidates = hulls[node.left];
      candidates.insert(candidates.end(), hulls[node.right].begin(), hulls[node.right].end());
      std::vector<std::uint32_t>().swap(hulls[node.left]);
      std::vector<std::uint32_t>().swap(hulls[node.right]);
    }
    scratch.clear();
    for (auto i : candidates) scratch.push_back(points_[i].p);
    const auto idx = convex_hull_indices(scratch);
    auto& h = hulls[k];
    h.reserve(idx.size());
    for (auto i : idx) h.push_back(candidates[i]);
    nodes_[k].hull_count = static_cast<std::uint32_t>(h.size());
  }

  // hull_count currently holds the hull size of every node; pick levels.
  std::uint32_t max_depth = 0;
  for (const auto& node : nodes_) max_depth = std::max(max_depth, node.depth);
  std::vector<std::size_t> level_total(max_depth + 1, 0);
  for (const auto& node : nodes_) level_total[node.depth] += node.hull_count;
  const double budget = kBudgetConstant * t;
  std::size_t total = 0;
  std::uint32_t levels = 0;
  while (levels <= max_depth &&
         static_cast<double>(total + level_total[levels]) <= budget) {
    total += level_total[levels];
    ++levels;
  }
  stats_.points = points_.size();
  stats_.nodes = nodes_.size();
  stats_.leaf_size = leaf_size;
  stats_.hull_levels = levels;
  stats_.budget = budget;
  stats_.stored_hull_vertices = total;
  for (auto& node : nodes_) node.hull_count = 0;
  if (levels == 0) return;

  // The bottom-up pass released child hulls; rebuild the stored levels.
  hull_points_.reserve(total);
  hull_tags_.reserve(total);
  for (auto& node : nodes_) {
    if (node.depth >= levels) continue;
    scratch.clear();
    for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
      scratch.push_back(points_[i].p);
    }
    const auto idx = convex_hull_indices(scratch);
    node.hull_first = static_cast<std::uint32_t>(hull_points_.size());
    node.hull_count = static_cast<std::uint32_t>(idx.size());
    for (auto i : idx) {
      hull_points_.push_back(scratch[i]);
      hull_tags_.push_back(node.first + i);
    }
  }
}

std::uint32_t PartitionTree::build(std::uint32_t first, std::uint32_t count, std::uint32_t depth,
                                   std::size_t leaf_size) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Box box;
  for (std::uint32_t i = first; i < first + count; ++i) box.expand(points_[i].p);
  nodes_[id].box = box;
  nodes_[id].first = first;
  nodes_[id].count = count;
  nodes_[id].depth = depth;
  if (count <= leaf_size) return id;

  const bool by_x = depth % 2 == 0;
  auto key = [by_x](const TaggedPoint& tp) {
    return by_x ? std::tie(tp.p.x, tp.p.y, tp.polygon_index, tp.vertex_index)
                : std::tie(tp.p.y, tp.p.x, tp.polygon_index, tp.vertex_index);
  };
  const std::uint32_t half = count / 2;
  auto begin = points_.begin() + first;
  std::nth_element(begin, begin + half, begin + count,
                   [&key](const TaggedPoint& l, const TaggedPoint& r) { return key(l) < key(r); });
  const auto left = build(first, half, depth + 1, leaf_size);
  const auto right = build(first + half, count - half, depth + 1, leaf_size);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

namespace {

double magnitude(Point p) { return std::max(std::abs(p.x), std::abs(p.y)); }

}  // namespace

template <bool kSlab>
SlabQueryResult PartitionTree::query(Point a, Point b) const {
  SlabQueryResult best;
  if (nodes_.empty()) return best;

  const Point d = b - a;
  const double len = norm(d);
  const Point dhat{d.x / len, d.y / len};
  const Point normal{-d.y, d.x};
  const double seg_mag = std::max(magnitude(a), magnitude(b));
  const double d_l1 = std::abs(d.x) + std::abs(d.y);

  auto score = [&](const TaggedPoint& tp) {
    if constexpr (kSlab) {
      return dist_point_segment(tp.p, Segment(a, b)).distance;
    } else {
      return std::abs(cross(dhat, tp.p - a));
    }
  };
  auto offer = [&](const TaggedPoint& tp) {
    const double dist = score(tp);
    if (!best.found || std::tie(dist, tp.polygon_id, tp.vertex_index) <
                           std::tie(best.distance, best.point.polygon_id,
                                    best.point.vertex_index)) {
      best.found = true;
      best.point = tp;
      best.distance = dist;
    }
  };

  // Rounding slack for evaluating the linear functionals over a box.
  auto slack = [&](const Box& box) {
    return 1e-13 * std::max({seg_mag, magnitude(box.lo), magnitude(box.hi)});
  };
  // Returns a lower bound on the distance of any point of the box to the
  // query line, or -1 when the box cannot contain a point of the slab.
  auto bound = [&](const Box& box) {
    const Point corners[4] = {box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}};
    const double eps = slack(box);
    if constexpr (kSlab) {
      double umax = -std::numeric_limits<double>::infinity();
      double wmin = std::numeric_limits<double>::infinity();
      for (const Point& c : corners) {
        umax = std::max(umax, dot(c - a, d));
        wmin = std::min(wmin, dot(c - b, d));
      }
      if (umax < -eps * d_l1 || wmin > eps * d_l1) return -1.0;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Point& c : corners) {
      const double v = cross(dhat, c - a);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo > 0.0) return std::max(0.0, lo - eps);
    if (hi < 0.0) return std::max(0.0, -hi - eps);
    return 0.0;
  };

  // Answers the node from its hull when every point is inside the slab and
  // strictly on one side of the query line. Returns false otherwise.
  auto try_hull = [&](const Node& node) {
    const auto h = hull(node);
    const double eps = slack(node.box);
    if constexpr (kSlab) {
      const Point lo = h[hull_extreme_point(h, {-d.x, -d.y})];
      const Point hi = h[hull_extreme_point(h, d)];
      if (!(dot(lo - a, d) > eps * d_l1) || !(dot(hi - b, d) < -eps * d_l1)) return false;
    }
    const std::size_t top = hull_extreme_point(h, normal);
    const std::size_t bottom = hull_extreme_point(h, {-normal.x, -normal.y});
    std::size_t nearest;
    if (cross(dhat, h[bottom] - a) > eps) {
      nearest = bottom;
    } else if (cross(dhat, h[top] - a) < -eps) {
      nearest = top;
    } else {
      return false;
    }
    const std::size_t n = h.size();
    offer(points_[hull_tags_[node.hull_first + nearest]]);
    if (n > 1) {
      offer(points_[hull_tags_[node.hull_first + (nearest + 1) % n]]);
      offer(points_[hull_tags_[node.hull_first + (nearest + n - 1) % n]]);
    }
    return true;
  };

  struct Entry {
    std::uint32_t node;
    double bound;
  };
  std::vector<Entry> stack;
  if (const double b0 = bound(nodes_[0].box); b0 >= 0.0) stack.push_back({0, b0});
  while (!stack.empty()) {
    const Entry top = stack.back();
    stack.pop_back();
    if (best.found && top.bound > best.distance) continue;
    const Node& node = nodes_[top.node];
    if (node.leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        if constexpr (kSlab) {
          if (!in_slab(points_[i].p, a, b)) continue;
        }
        offer(points_[i]);
      }
      continue;
    }
    if (node.hull_count > 0 && try_hull(node)) continue;
    const double bl = bound(nodes_[node.left].box);
    const double br = bound(nodes_[node.right].box);
    if (bl <= br) {
      if (br >= 0.0) stack.push_back({node.right, br});
      if (bl >= 0.0) stack.push_back({node.left, bl});
    } else {
      if (bl >= 0.0) stack.push_back({node.left, bl});
      if (br >= 0.0) stack.push_back({node.right, br});
    }
  }
  return best;
}

SlabQueryResult PartitionTree::closest_in_slab(const Segment& s) const {
  return query<true>(s.a(), s.b());
}

SlabQueryResult PartitionTree::closest_to_line(const Line& l) const {
  return query<false>(l.anchor(), l.anchor() + l.direction());
}

}  // namespace clearance
