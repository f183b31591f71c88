#include "clearance/convex_hull.hpp"

#include <algorithm>
#include <numeric>

namespace clearance {

std::vector<std::uint32_t> convex_hull_indices(std::span<const Point> points) {
  std::vector<std::uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t l, std::uint32_t r) {
    return lex_less(points[l], points[r]) || (points[l] == points[r] && l < r);
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::uint32_t l, std::uint32_t r) { return points[l] == points[r]; }),
              order.end());
  if (order.size() <= 2) return order;

  std::vector<std::uint32_t> hull(2 * order.size());
  std::size_t k = 0;
  for (std::uint32_t i : order) {
    while (k >= 2 && orientation(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0) --k;
    hull[k++] = i;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && orientation(points[hull[k - 2]], points[hull[k - 1]], points[*it]) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Point> convex_hull(std::span<const Point> points) {
  std::vector<Point> out;
  for (std::uint32_t i : convex_hull_indices(points)) out.push_back(points[i]);
  return out;
}

std::size_t hull_extreme_point(std::span<const Point> hull, Point dir) {
  return detail::cyclic_argmax(hull.size(), [&](std::size_t i) { return dot(hull[i], dir); });
}

}  // namespace clearance
