#include <doctest.h>

#include <cmath>

#include "clearance/convex_hull.hpp"
#include "clearance/error.hpp"
#include "clearance/partition_tree.hpp"
#include "support/reference.hpp"

using namespace clearance;

namespace {

std::vector<TaggedPoint> tagged(const std::vector<Point>& pts) {
  std::vector<TaggedPoint> out;
  for (std::uint32_t i = 0; i < pts.size(); ++i) out.push_back({pts[i], 0, 0, i});
  return out;
}

std::vector<Point> random_points(Rng& rng, std::size_t n, double side) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(0, side), rng.uniform(0, side)});
  return pts;
}

// Hull by exhaustive edge test: pq is a hull edge when every point is on its left.
std::vector<Point> hull_by_edges(const std::vector<Point>& pts) {
  std::vector<Point> verts;
  for (const Point p : pts) {
    for (const Point q : pts) {
      if (p == q) continue;
      bool edge = true;
      for (const Point r : pts) {
        const int o = ref::orient(p, q, r);
        if (o < 0 || (o == 0 && !(ref::on_box(r, p, q)))) {
          edge = false;
          break;
        }
      }
      if (edge) verts.push_back(p);
    }
  }
  std::sort(verts.begin(), verts.end(), [](Point a, Point b) { return lex_less(a, b); });
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace

TEST_CASE("convex hull basics") {
  const std::vector<Point> sq = {{1, 1}, {0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.5, 0}};
  const auto h = convex_hull(sq);
  REQUIRE(h.size() == 4);
  CHECK(h[0] == Point{0, 0});
  CHECK(h[1] == Point{1, 0});
  CHECK(h[2] == Point{1, 1});
  CHECK(h[3] == Point{0, 1});
  const std::vector<Point> line = {{0, 0}, {2, 2}, {1, 1}};
  CHECK(convex_hull(line).size() == 2);
  CHECK(hull_extreme_point(h, {1, 0}) == 1);   // (1,0) and (1,1) tie: lower index
  CHECK(hull_extreme_point(h, {0, -1}) == 0);  // (0,0) and (1,0) tie
}

TEST_CASE("convex hull matches exhaustive edge test") {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    auto pts = random_points(rng, 3 + rng.below(40), 10);
    if (i % 3 == 0) {
      for (auto& p : pts) p = {std::floor(p.x / 3), std::floor(p.y / 3)};
    }
    auto h = convex_hull(pts);
    std::sort(h.begin(), h.end(), [](Point a, Point b) { return lex_less(a, b); });
    const auto expect = hull_by_edges(pts);
    if (expect.size() >= 3) CHECK(h == expect);
  }
}

TEST_CASE("hull extreme point agrees with a scan") {
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    std::vector<Point> ring;
    const std::size_t n = 3 + rng.below(400);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = 6.283185307179586 * static_cast<double>(j) / static_cast<double>(n);
      ring.push_back({std::cos(a) * 5 + 1, std::sin(a) * 3 - 2});
    }
    const auto h = convex_hull(ring);
    for (int k = 0; k < 10; ++k) {
      Point dir{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      if (k == 0) dir = {1, 0};
      std::size_t best = 0;
      for (std::size_t j = 1; j < h.size(); ++j) {
        if (dot(h[j], dir) > dot(h[best], dir)) best = j;
      }
      CHECK(dot(h[hull_extreme_point(h, dir)], dir) == dot(h[best], dir));
    }
  }
}

TEST_CASE("budget range is enforced") {
  Rng rng(43);
  const auto pts = tagged(random_points(rng, 100, 10));
  CHECK_THROWS_AS(PartitionTree(pts, 99), Error);
  CHECK_THROWS_AS(PartitionTree(pts, 10001), Error);
  CHECK_THROWS_AS(PartitionTree({}, 1), Error);
  CHECK_NOTHROW(PartitionTree(pts, 100));
  CHECK_NOTHROW(PartitionTree(pts, 10000));
}

TEST_CASE("three points make one node") {
  const PartitionTree triangle(tagged({{0, 2}, {3, 0}, {-1, -1}}), 3);
  CHECK(triangle.nodes().size() == 1);
  CHECK(triangle.hull(triangle.nodes()[0]).size() == 3);
  // These three are collinear, so the hull keeps only the two extremes.
  const PartitionTree tree(tagged({{0, 2}, {3, 5}, {-1, 1}}), 3);
  CHECK(tree.nodes().size() == 1);
  CHECK(tree.hull(tree.nodes()[0]).size() == 2);
  const auto r = tree.closest_in_slab(Segment({0, 0}, {2, 0}));
  CHECK(r.found);
  CHECK(r.point.p == Point{0, 2});
  CHECK(r.distance == 2);
}

TEST_CASE("empty slab") {
  Rng rng(44);
  auto pts = random_points(rng, 50, 10);
  for (auto& p : pts) p.x += 6;
  const PartitionTree tree(tagged(pts), 50);
  CHECK_FALSE(tree.closest_in_slab(Segment({0, 0}, {2, 0})).found);
}

TEST_CASE("stored hulls equal hulls of their subsets") {
  Rng rng(45);
  const auto pts = tagged(random_points(rng, 1000, 100));
  const PartitionTree tree(pts, std::pow(1000.0, 1.5));
  std::size_t stored = 0;
  for (const auto& node : tree.nodes()) {
    if (node.hull_count == 0) continue;
    std::vector<Point> subset;
    for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
      subset.push_back(tree.points()[i].p);
    }
    auto expect = convex_hull(subset);
    auto got = std::vector<Point>(tree.hull(node).begin(), tree.hull(node).end());
    CHECK(got == expect);
    stored += got.size();
  }
  CHECK(stored == tree.stats().stored_hull_vertices);
  CHECK(static_cast<double>(stored) <= tree.stats().budget);
  CHECK(tree.stats().hull_levels > 1);
}

TEST_CASE("largest budget gives constant leaves") {
  Rng rng(46);
  const PartitionTree tree(tagged(random_points(rng, 1000, 100)), 1e6);
  CHECK(tree.stats().leaf_size == 4);
  for (const auto& node : tree.nodes()) {
    if (node.leaf()) CHECK(node.count <= 4);
  }
}

TEST_CASE("slab and line queries agree with scans") {
  Rng rng(47);
  for (double exponent : {1.0, 1.25, 1.5, 2.0}) {
    for (int round = 0; round < 4; ++round) {
      auto pts = tagged(random_points(rng, 200 + rng.below(800), 50));
      if (round == 3) {
        for (auto& tp : pts) tp.p = {std::floor(tp.p.x / 5), std::floor(tp.p.y / 5)};
      }
      const double n = static_cast<double>(pts.size());
      const PartitionTree tree(pts, std::pow(n, exponent));
      for (int q = 0; q < 300; ++q) {
        Point a{rng.uniform(-5, 55), rng.uniform(-5, 55)};
        Point b{rng.uniform(-5, 55), rng.uniform(-5, 55)};
        if (round == 3) {
          a = {std::floor(a.x / 5), std::floor(a.y / 5)};
          b = {std::floor(b.x / 5), std::floor(b.y / 5)};
        }
        if (a == b) continue;
        const Segment s(a, b);
        const auto got = tree.closest_in_slab(s);
        const auto expect = ref::slab_scan(pts, s);
        CHECK(got.found == expect.found);
        if (expect.found) {
          CHECK(ref::relative_close(got.distance, expect.distance));
          CHECK(in_slab(got.point.p, a, b));
        }
        const Line l = Line::through(a, b);
        const auto gl = tree.closest_to_line(l);
        long double best = std::numeric_limits<long double>::infinity();
        for (const auto& tp : pts) best = std::min(best, ref::point_line(tp.p, l.anchor(), l.direction()));
        CHECK(ref::relative_close(gl.distance, best));
      }
    }
  }
}
