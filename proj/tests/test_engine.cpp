#include <doctest.h>

#include "clearance/engine.hpp"
#include "clearance/error.hpp"
#include "support/reference.hpp"

using namespace clearance;

namespace {

SimplePolygon square(PolygonId id, double x, double y, double size = 1.0) {
  return SimplePolygon(id, {{x, y}, {x + size, y}, {x + size, y + size}, {x, y + size}});
}

SceneIndex square_index() { return SceneIndex::build(validate_scene({square(1, 2, 2)})); }

}  // namespace

TEST_CASE("t policies") {
  CHECK(TPolicy::parse("n").budget(100) == 100);
  CHECK(TPolicy::parse("n^1.5").budget(100) == doctest::Approx(1000));
  CHECK(TPolicy::parse("n^2").budget(100) == 10000);
  CHECK(TPolicy::parse("n2cap:2000").budget(1000) == 1000);  // clamped up to n
  CHECK(TPolicy::parse("n2cap:200000").budget(1000) == 10000);
  CHECK(TPolicy::parse("n2cap:1000000000").budget(100) == 10000);
  CHECK_THROWS_AS(TPolicy::parse("n^3"), Error);
  CHECK_THROWS_AS(TPolicy::parse("log n"), Error);
  CHECK_THROWS_AS(TPolicy::parse("n2cap:"), Error);
}

TEST_CASE("square and L-shaped path") {
  const SceneIndex idx = square_index();
  const PolyPath path({{0, 0}, {5, 0}, {5, 5}});
  auto rep = idx.path_clearance(path, 1);
  CHECK(rep.verdict == Verdict::HasClearance);
  CHECK(rep.min_clearance == 2);
  CHECK_FALSE(rep.intersection);
  REQUIRE(rep.per_segment.size() == 2);
  CHECK(rep.per_segment[0].clearance == 2);
  CHECK(rep.per_segment[1].clearance == 2);
  REQUIRE(rep.witness);
  CHECK(rep.witness->obstacle_point == Point{2, 2});
  CHECK(rep.witness->path_point == Point{2, 0});
  rep = idx.path_clearance(path, 2.5);
  CHECK(rep.verdict == Verdict::Violated);
  CHECK(rep.min_clearance == 2);
  CHECK(idx.path_clearance(path, 2).verdict == Verdict::HasClearance);
}

TEST_CASE("crossing path stops at the emptiness step") {
  const SceneIndex idx = square_index();
  auto rep = idx.path_clearance(PolyPath({{0, 2.5}, {5, 2.5}}), 0.1);
  CHECK(rep.verdict == Verdict::Violated);
  CHECK(rep.min_clearance == 0);
  CHECK(rep.intersection);
  CHECK(rep.per_segment.empty());
  REQUIRE(rep.witness);
  CHECK(rep.witness->polygon_id == 1);
  rep = idx.path_clearance(PolyPath({{0, 0}, {2.5, 2.5}, {0, 5}}), 0.1);
  CHECK(rep.intersection);
  CHECK(rep.witness->path_point == Point{2.5, 2.5});
  rep = idx.path_clearance(PolyPath({{0, 0}, {2, 2}}), 0.1);  // touches a corner
  CHECK(rep.intersection);
}

TEST_CASE("invalid clearance") {
  const SceneIndex idx = square_index();
  const PolyPath path({{0, 0}, {5, 0}});
  CHECK_THROWS_AS(idx.path_clearance(path, 0), Error);
  CHECK_THROWS_AS(idx.path_clearance(path, -1), Error);
  CHECK_THROWS_AS(idx.path_clearance(path, NAN), Error);
  CHECK_THROWS_AS(idx.path_clearance(path, INFINITY), Error);
}

TEST_CASE("empty scene has unbounded clearance") {
  const SceneIndex idx = SceneIndex::build(validate_scene({}));
  const auto rep = idx.path_clearance(PolyPath({{0, 0}, {1, 0}, {1, 1}}), 5);
  CHECK(rep.verdict == Verdict::HasClearance);
  CHECK(std::isinf(rep.min_clearance));
  CHECK(rep.per_segment.size() == 2);
  CHECK_FALSE(rep.witness);
  CHECK_THROWS_AS(idx.nearest_polygon_to_segment(Segment({0, 0}, {1, 0})), Error);
  CHECK_THROWS_AS(idx.nearest_polygon_to_line(Line({0, 0}, {1, 0})), Error);
}

TEST_CASE("nearest polygon to a segment examples") {
  const SceneIndex idx = square_index();
  auto r = idx.nearest_polygon_to_segment(Segment({0, 0}, {5, 0}));
  CHECK_FALSE(r.hit);
  CHECK(r.distance == 2);
  CHECK(r.obstacle_point == Point{2, 2});
  r = idx.nearest_polygon_to_segment(Segment({0, 4}, {1, 4}));
  CHECK(r.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.obstacle_point == Point{2, 3});
  CHECK(r.query_point == Point{1, 4});
  r = idx.nearest_polygon_to_segment(Segment({2.5, 0}, {2.5, 2.5}));
  CHECK(r.hit);
  CHECK(r.distance == 0);
}

TEST_CASE("nearest polygon to a line examples") {
  const SceneIndex idx = SceneIndex::build(validate_scene({square(1, 0, 0), square(2, 0, 4)}));
  auto r = idx.nearest_polygon_to_line(Line({0, 2}, {1, 0}));
  CHECK_FALSE(r.hit);
  CHECK(r.polygon_id == 1);
  CHECK(r.distance == 1);
  r = idx.nearest_polygon_to_line(Line({0, 2.8}, {1, 0}));
  CHECK(r.polygon_id == 2);
  CHECK(r.distance == doctest::Approx(1.2));
  CHECK(idx.nearest_polygon_to_line(Line({0, 0.5}, {1, 0})).hit);
  r = idx.nearest_polygon_to_line(Line({1, 1}, {1, -1}));  // tangent at a corner
  CHECK(r.hit);
  CHECK(r.distance == 0);
}

TEST_CASE("index matches the oracle on random paths") {
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng.below(30);
    const Scene scene = ref::random_scene(100 + trial, m, m * (3 + rng.below(30)));
    IndexConfig cfg;
    cfg.t_policy = TPolicy::parse(trial % 3 == 0 ? "n" : trial % 3 == 1 ? "n^1.5" : "n^2");
    const SceneIndex idx = SceneIndex::build(scene, cfg);
    const Box box = bench_box(m);
    const PolyPath path = trial % 2 ? random_path(rng, 2 + rng.below(20), box)
                                    : random_free_path(rng, idx, 2 + rng.below(20), box, 8);
    const auto oracle = oracle_clearance(scene, path);
    const double c = rng.uniform(1e-6, 10);
    const auto rep = idx.path_clearance(path, c);
    CHECK(ref::relative_close(rep.min_clearance, oracle.min_clearance));
    CHECK((rep.verdict == Verdict::HasClearance) == (oracle.min_clearance >= c));
    if (rep.intersection) CHECK(oracle.min_clearance == 0);
    if (!rep.per_segment.empty()) {
      for (std::size_t j = 0; j < path.segment_count(); ++j) {
        CHECK(ref::relative_close(rep.per_segment[j].clearance, oracle.per_segment[j].clearance));
      }
    }
    REQUIRE(rep.witness);
    CHECK(std::abs(distance(rep.witness->path_point, rep.witness->obstacle_point) - rep.min_clearance) <=
          1e-9 * std::max(1.0, rep.min_clearance));
    CHECK(idx.min_clearance(path) == rep.min_clearance);
  }
}

TEST_CASE("segment decomposition identity") {
  const Scene scene = ref::random_scene(81, 30, 600);
  const SceneIndex idx = SceneIndex::build(scene);
  Rng rng(82);
  const Box box = bench_box(30);
  int tested = 0;
  for (int i = 0; i < 2000; ++i) {
    const Point a{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
    const Point b{a.x + rng.uniform(-6, 6), a.y + rng.uniform(-6, 6)};
    if (a == b) continue;
    const Segment s(a, b);
    const auto r = idx.nearest_polygon_to_segment(s);
    const auto o = oracle_nearest_polygon_to_segment(scene, s);
    CHECK(ref::relative_close(r.distance, o->distance));
    if (r.hit) {
      CHECK(o->distance == 0);
      continue;
    }
    ++tested;
    const double ta = idx.nearest_site().nearest_polygon_to_point(a).distance;
    const double tb = idx.nearest_site().nearest_polygon_to_point(b).distance;
    const auto slab = idx.partition_tree().closest_in_slab(s);
    const double ts = slab.found ? slab.distance : std::numeric_limits<double>::infinity();
    CHECK(r.distance == std::min({ta, tb, ts}));
    CHECK(ta >= r.distance);
    CHECK(tb >= r.distance);
    CHECK(ts >= r.distance);
  }
  CHECK(tested > 300);
}

TEST_CASE("verdict is a threshold in c") {
  const Scene scene = ref::random_scene(91, 20, 300);
  const SceneIndex idx = SceneIndex::build(scene);
  Rng rng(92);
  const PolyPath path = random_free_path(rng, idx, 8, bench_box(20), 6);
  const double minc = idx.min_clearance(path);
  REQUIRE(minc > 0);
  CHECK(idx.path_clearance(path, minc).verdict == Verdict::HasClearance);
  CHECK(idx.path_clearance(path, std::nextafter(minc, 1e9)).verdict == Verdict::Violated);
  for (int i = 0; i < 200; ++i) {
    const double c = rng.uniform(1e-9, 3 * minc);
    CHECK((idx.path_clearance(path, c).verdict == Verdict::HasClearance) == (c <= minc));
  }
}

TEST_CASE("parallel and verdict-only evaluation") {
  Rng rng(93);
  for (int trial = 0; trial < 20; ++trial) {
    const Scene scene = ref::random_scene(200 + trial, 20, 400);
    const SceneIndex idx = SceneIndex::build(scene);
    const PolyPath path = random_free_path(rng, idx, 12, bench_box(20), 6);
    const double c = rng.uniform(0.01, 4);
    IndexConfig par = idx.config();
    par.parallel = true;
    par.threads = 4;
    const auto seq = idx.path_clearance(path, c);
    CHECK(idx.path_clearance(path, c, par) == seq);
    IndexConfig fast = idx.config();
    fast.verdict_only = true;
    const auto quick = idx.path_clearance(path, c, fast);
    CHECK(quick.verdict == seq.verdict);
    CHECK(quick.min_clearance >= seq.min_clearance);
    if (quick.exact) CHECK(quick == seq);
    if (!quick.exact) CHECK(quick.min_clearance < c);
  }
}

TEST_CASE("build stats respect the budget") {
  const Scene scene = ref::random_scene(94, 50, 1000);
  for (const char* policy : {"n", "n^1.25", "n^1.5", "n^2", "n2cap:100000"}) {
    IndexConfig cfg;
    cfg.t_policy = TPolicy::parse(policy);
    const auto idx = SceneIndex::build(scene, cfg);
    const auto& st = idx.stats();
    CHECK(st.n == 1000);
    CHECK(st.m == 50);
    CHECK(static_cast<double>(st.stored_hull_vertices) <= st.hull_budget);
    CHECK(st.hull_budget == doctest::Approx(PartitionTree::kBudgetConstant * st.t));
    CHECK(st.hull_levels >= 1);
  }
}

TEST_CASE("scenes far from the origin and at small scale") {
  Rng rng(95);
  for (const auto& [scale, offset] : std::vector<std::pair<double, double>>{{1.0, 1e6}, {1e-3, 0.0}, {1e3, -5e7}}) {
    const Scene base = ref::random_scene(300, 25, 500);
    std::vector<SimplePolygon> moved;
    for (const auto& poly : base.polygons()) {
      std::vector<Point> v;
      for (const Point p : poly.vertices()) v.push_back({p.x * scale + offset, p.y * scale + offset});
      moved.emplace_back(poly.id(), std::move(v));
    }
    const Scene scene = validate_scene(std::move(moved));
    const SceneIndex idx = SceneIndex::build(scene);
    const Box box = bench_box(25);
    const Box scaled{{box.lo.x * scale + offset, box.lo.y * scale + offset},
                     {box.hi.x * scale + offset, box.hi.y * scale + offset}};
    for (int i = 0; i < 40; ++i) {
      const PolyPath path = i % 2 ? random_path(rng, 8, scaled) : random_free_path(rng, idx, 8, scaled, 6 * scale);
      const auto oracle = oracle_clearance(scene, path);
      CHECK(ref::relative_close(idx.min_clearance(path), oracle.min_clearance));
    }
  }
}
