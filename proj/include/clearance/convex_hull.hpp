#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clearance/geometry.hpp"

namespace clearance {

/// Indices into `points` of the strictly convex hull, counterclockwise,
/// starting from the lexicographically smallest point. Collinear and
/// duplicate points are dropped; a collinear set yields its two extremes.
std::vector<std::uint32_t> convex_hull_indices(std::span<const Point> points);

std::vector<Point> convex_hull(std::span<const Point> points);

namespace detail {

// Binary search for the maximum of key(i) over a strictly convex cycle of
// h vertices, where key is a linear functional evaluated per vertex. Ties
// resolve to the lower index.
template <class Key>
std::size_t cyclic_argmax(std::size_t h, Key&& key) {
  if (h <= 3) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < h; ++i) {
      if (key(i) > key(best)) best = i;
    }
    return best;
  }
  auto up = [&](std::size_t i) { return key((i + 1) % h) > key(i); };
  const double k0 = key(0);
  std::size_t idx = 0;
  const bool up0 = up(0);
  if (up0 || !up(h - 1)) {
    // `before(c)` holds exactly on [1, argmax) for a unimodal cycle.
    auto before = [&](std::size_t c) {
      return up0 ? (up(c) && key(c) > k0) : (up(c) || key(c) < k0);
    };
    std::size_t lo = 1;
    std::size_t hi = h;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (before(mid)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    idx = lo % h;
  }
  // Rounding can make the computed keys slightly non-unimodal near the top.
  for (;;) {
    const std::size_t next = (idx + 1) % h;
    const std::size_t prev = (idx + h - 1) % h;
    if (key(next) > key(idx)) {
      idx = next;
    } else if (key(prev) > key(idx)) {
      idx = prev;
    } else {
      break;
    }
  }
  const std::size_t next = (idx + 1) % h;
  const std::size_t prev = (idx + h - 1) % h;
  std::size_t best = idx;
  if (key(prev) == key(idx) && prev < best) best = prev;
  if (key(next) == key(idx) && next < best) best = next;
  return best;
}

}  // namespace detail

/// Vertex of a counterclockwise convex polygon maximizing <v, dir>, found in
/// O(log h) by binary search; ties go to the lower index.
std::size_t hull_extreme_point(std::span<const Point> hull, Point dir);

}  // namespace clearance
