#include "clearance/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "clearance/error.hpp"

namespace clearance {

namespace {

constexpr double kCoverage = 0.3;
constexpr std::size_t kAttemptsPerDisc = 200;
constexpr std::size_t kRestarts = 50;

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint32_t>(cy);
}

}  // namespace

Scene generate_scene(std::uint64_t seed, std::size_t m, std::size_t target_n, const Box& bbox) {
  if (target_n < 3 * m) {
    throw Error(ErrorKind::InvalidGeometry, "target_n must be at least 3m");
  }
  if (m == 0) return validate_scene({});
  const double w = bbox.hi.x - bbox.lo.x;
  const double h = bbox.hi.y - bbox.lo.y;
  if (!(w > 0.0) || !(h > 0.0)) throw Error(ErrorKind::InvalidGeometry, "empty bounding box");

  Rng rng(seed);
  const double r = std::sqrt(kCoverage * w * h / (static_cast<double>(m) * std::numbers::pi));
  const double gap = 2.1 * r;
  if (2 * r >= std::min(w, h)) {
    throw Error(ErrorKind::PlacementFailure, "bounding box too small for the discs");
  }

  std::vector<Point> centers;
  centers.reserve(m);
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  auto cell = [gap](double v) { return static_cast<std::int64_t>(std::floor(v / gap)); };
  std::size_t restarts = 0;
  std::size_t misses = 0;
  while (centers.size() < m) {
    if (++misses > kAttemptsPerDisc * m) {
      // Early discs can block the rest; start over a bounded number of times.
      if (++restarts > kRestarts) {
        throw Error(ErrorKind::PlacementFailure,
                    "could not place " + std::to_string(m) + " polygons after bounded retries");
      }
      centers.clear();
      grid.clear();
      misses = 0;
    }
    const Point c{rng.uniform(bbox.lo.x + r, bbox.hi.x - r), rng.uniform(bbox.lo.y + r, bbox.hi.y - r)};
    const auto cx = cell(c.x);
    const auto cy = cell(c.y);
    bool clear = true;
    for (std::int64_t dx = -1; dx <= 1 && clear; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && clear; ++dy) {
        auto it = grid.find(cell_key(cx + dx, cy + dy));
        if (it == grid.end()) continue;
        for (auto other : it->second) {
          if (distance(centers[other], c) < gap) {
            clear = false;
            break;
          }
        }
      }
    }
    if (!clear) continue;
    grid[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(centers.size()));
    centers.push_back(c);
  }

  std::vector<SimplePolygon> polys;
  polys.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t count = target_n / m + (i < target_n % m ? 1 : 0);
    std::vector<Point> ring;
    ring.reserve(count);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
    for (std::size_t j = 0; j < count; ++j) {
      const double angle = step * (static_cast<double>(j) + rng.uniform(0.0, 0.8));
      const double radius = r * rng.uniform(0.3, 1.0);
      ring.push_back({centers[i].x + radius * std::cos(angle), centers[i].y + radius * std::sin(angle)});
    }
    polys.emplace_back(static_cast<PolygonId>(i), std::move(ring));
  }
  return validate_scene(std::move(polys));
}

Box bench_box(std::size_t m) {
  const double side = 10.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(m, 1)));
  return Box{{0.0, 0.0}, {side, side}};
}

PolyPath random_path(Rng& rng, std::size_t vertices, const Box& bbox) {
  std::vector<Point> pts;
  pts.reserve(vertices);
  while (pts.size() < vertices) {
    const Point p{rng.uniform(bbox.lo.x, bbox.hi.x), rng.uniform(bbox.lo.y, bbox.hi.y)};
    if (!pts.empty() && pts.back() == p) continue;
    pts.push_back(p);
  }
  return PolyPath(std::move(pts));
}

PolyPath random_free_path(Rng& rng, const SceneIndex& index, std::size_t vertices,
                          const Box& bbox, double max_step) {
  auto free_point = [&index](Point p) {
    return index.point_location().locate(p).kind == Location::FreeSpace;
  };
  for (;;) {
    std::vector<Point> pts;
    Point start;
    do {
      start = {rng.uniform(bbox.lo.x, bbox.hi.x), rng.uniform(bbox.lo.y, bbox.hi.y)};
    } while (!free_point(start));
    pts.push_back(start);
    std::size_t failures = 0;
    while (pts.size() < vertices && failures < 200) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double len = rng.uniform(0.1, 1.0) * max_step;
      const Point q{pts.back().x + len * std::cos(angle), pts.back().y + len * std::sin(angle)};
      if (!bbox.contains(q) || q == pts.back() || !free_point(q) ||
          index.emptiness().segment_intersects(Segment(pts.back(), q))) {
        ++failures;
        continue;
      }
      pts.push_back(q);
    }
    if (pts.size() == vertices) return PolyPath(std::move(pts));
  }
}

}  // namespace clearance
