#include "clearance/check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "clearance/convex_hull.hpp"
#include "clearance/engine.hpp"
#include "clearance/generator.hpp"
#include "clearance/oracle.hpp"

namespace clearance {

namespace {

constexpr double kTolerance = 1e-9;

bool close(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& describe) {
    if (ok) {
      ++result_.passed;
    } else {
      if (result_.failed == 0) result_.first_failure = describe();
      ++result_.failed;
    }
  }
  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string show(double expected, double got) {
  std::ostringstream out;
  out.precision(17);
  out << "expected " << expected << ", got " << got;
  return out.str();
}

Point random_point(Rng& rng, const Box& box) {
  return {rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
}

Segment random_segment(Rng& rng, const Box& box, double max_len) {
  const Point a = random_point(rng, box);
  for (;;) {
    const Point b{a.x + rng.uniform(-max_len, max_len), a.y + rng.uniform(-max_len, max_len)};
    if (b != a) return Segment(a, b);
  }
}

double boundary_distance(const Scene& scene, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& poly : scene.polygons()) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      best = std::min(best, dist_point_segment(p, poly.edge(i)).distance);
    }
  }
  return best;
}

// Answer of the segment query when the slab term is (wrongly) left out.
double faulty_segment_distance(const SceneIndex& idx, const Segment& s) {
  const auto r = idx.nearest_polygon_to_segment(s);
  if (r.hit) return 0.0;
  return std::min(idx.nearest_site().nearest_polygon_to_point(s.a()).distance,
                  idx.nearest_site().nearest_polygon_to_point(s.b()).distance);
}

}  // namespace

std::vector<SuiteResult> run_checks(const CheckConfig& config) {
  Rng rng(config.seed);
  std::vector<SuiteResult> results;
  const std::size_t trials = config.trials;

  {
    Suite suite("segment-distance");
    const Box box{{-10, -10}, {10, 10}};
    for (std::size_t i = 0; i < trials * 10; ++i) {
      const Segment s1 = random_segment(rng, box, 10);
      const Segment s2 = random_segment(rng, box, 10);
      const auto d = dist_segment_segment(s1, s2);
      if (segments_intersect(s1, s2)) {
        suite.expect(d.distance == 0.0, [&] { return show(0.0, d.distance); });
        continue;
      }
      const double four = std::min({dist_point_segment(s1.a(), s2).distance,
                                    dist_point_segment(s1.b(), s2).distance,
                                    dist_point_segment(s2.a(), s1).distance,
                                    dist_point_segment(s2.b(), s1).distance});
      suite.expect(d.distance == four, [&] { return show(four, d.distance); });
    }
    results.push_back(suite.take());
  }

  {
    Suite suite("hull-extreme");
    for (std::size_t i = 0; i < trials; ++i) {
      std::vector<Point> pts;
      const std::size_t count = 3 + rng.below(300);
      for (std::size_t j = 0; j < count; ++j) pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      const auto hull = convex_hull(pts);
      for (int k = 0; k < 10; ++k) {
        const Point dir{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::size_t best = 0;
        for (std::size_t j = 1; j < hull.size(); ++j) {
          if (dot(hull[j], dir) > dot(hull[best], dir)) best = j;
        }
        const std::size_t got = hull_extreme_point(hull, dir);
        suite.expect(dot(hull[got], dir) == dot(hull[best], dir),
                     [&] { return show(dot(hull[best], dir), dot(hull[got], dir)); });
      }
    }
    results.push_back(suite.take());
  }

  // One shared scene family for the structure suites.
  const std::size_t scenes = std::max<std::size_t>(1, trials / 20);
  Suite locate_suite("point-location");
  Suite empty_suite("emptiness");
  Suite site_suite("nearest-site");
  Suite slab_suite("slab");
  Suite segment_suite("segment");
  Suite path_suite("path");
  for (std::size_t sc = 0; sc < scenes; ++sc) {
    const std::size_t m = 5 + rng.below(30);
    const Box box = bench_box(m);
    const Scene scene = generate_scene(rng.next(), m, m * (3 + rng.below(25)), box);
    const SceneIndex idx = SceneIndex::build(scene);
    const std::size_t per_scene = std::max<std::size_t>(1, trials / scenes);

    for (std::size_t i = 0; i < per_scene * 10; ++i) {
      const Point p = random_point(rng, box);
      if (boundary_distance(scene, p) <= 1e-9) continue;
      std::optional<PolygonId> expect;
      for (const auto& poly : scene.polygons()) {
        if (point_in_polygon(p, poly)) expect = poly.id();
      }
      const auto got = idx.point_location().locate(p);
      const bool ok = expect ? (got.kind == Location::Inside && got.polygon_id == expect)
                             : got.kind == Location::FreeSpace;
      locate_suite.expect(ok, [&] { return "point location disagrees with the crossing scan"; });
    }

    for (std::size_t i = 0; i < per_scene * 10; ++i) {
      const Segment s = random_segment(rng, box, 8);
      const bool hit = idx.emptiness().segment_intersects(s).has_value();
      const double d = oracle_nearest_polygon_to_segment(scene, s)->distance;
      empty_suite.expect(hit == (d == 0.0), [&] { return show(d, hit ? 0.0 : 1.0); });
    }

    for (std::size_t i = 0; i < per_scene * 10; ++i) {
      const Point q = random_point(rng, box);
      double expect = std::numeric_limits<double>::infinity();
      for (const auto& poly : scene.polygons()) {
        for (std::size_t e = 0; e < poly.size(); ++e) {
          expect = std::min(expect, dist_point_segment(q, poly.edge(e)).distance);
        }
      }
      const double got = idx.nearest_site().nearest_polygon_to_point(q).distance;
      site_suite.expect(close(expect, got), [&] { return show(expect, got); });
    }

    const auto verts = scene_vertices(scene);
    for (std::size_t i = 0; i < per_scene * 10; ++i) {
      const Segment s = random_segment(rng, box, 8);
      SlabQueryResult expect;
      for (const auto& tp : verts) {
        if (!in_slab(tp.p, s.a(), s.b())) continue;
        const double d = dist_point_segment(tp.p, s).distance;
        if (!expect.found || d < expect.distance) expect = {true, tp, d};
      }
      const auto got = idx.partition_tree().closest_in_slab(s);
      slab_suite.expect(got.found == expect.found && (!got.found || close(expect.distance, got.distance)),
                        [&] { return show(expect.distance, got.distance); });
    }

    for (std::size_t i = 0; i < per_scene * 10; ++i) {
      const Segment s = random_segment(rng, box, 8);
      const double expect = oracle_nearest_polygon_to_segment(scene, s)->distance;
      const double got = config.inject_fault ? faulty_segment_distance(idx, s)
                                             : idx.nearest_polygon_to_segment(s).distance;
      segment_suite.expect(close(expect, got), [&] { return show(expect, got); });
    }

    for (std::size_t i = 0; i < per_scene; ++i) {
      const PolyPath path = i % 2 == 0 ? random_free_path(rng, idx, 2 + rng.below(20), box, 6)
                                       : random_path(rng, 2 + rng.below(20), box);
      const double expect = oracle_clearance(scene, path).min_clearance;
      double got;
      if (config.inject_fault) {
        got = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < path.segment_count(); ++j) {
          got = std::min(got, faulty_segment_distance(idx, path.segment(j)));
        }
      } else {
        got = idx.min_clearance(path);
      }
      const double c = rng.uniform(1e-6, 10);
      const bool verdict = idx.path_clearance(path, c).verdict == Verdict::HasClearance;
      path_suite.expect(close(expect, got) && verdict == (expect >= c),
                        [&] { return show(expect, got); });
    }
  }
  results.push_back(locate_suite.take());
  results.push_back(empty_suite.take());
  results.push_back(site_suite.take());
  results.push_back(slab_suite.take());
  results.push_back(segment_suite.take());
  results.push_back(path_suite.take());
  return results;
}

}  // namespace clearance
