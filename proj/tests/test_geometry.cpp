#include <doctest.h>

#include <cmath>

#include "clearance/error.hpp"
#include "clearance/generator.hpp"
#include "clearance/geometry.hpp"
#include "support/reference.hpp"

using namespace clearance;

TEST_CASE("orientation signs") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
}

TEST_CASE("orientation is exact on nearly collinear inputs") {
  // Points on the line y = x with tiny perturbations that naive evaluation gets wrong.
  const double base = 0.5;
  for (int i = 0; i < 64; ++i) {
    const double px = base + i * std::ldexp(1.0, -53);
    const Point p{px, px};
    CHECK(orientation(p, {12, 12}, {24, 24}) == 0);
    const Point above{px, std::nextafter(px, 1.0)};
    CHECK(orientation({12, 12}, {24, 24}, above) == 1);
    const Point below{px, std::nextafter(px, 0.0)};
    CHECK(orientation({12, 12}, {24, 24}, below) == -1);
  }
}

TEST_CASE("orientation is antisymmetric and cyclic") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Point p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Point q{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Point r = p + rng.uniform(-2, 2) * (q - p);  // nearly collinear
    const int o = orientation(p, q, r);
    CHECK(orientation(q, r, p) == o);
    CHECK(orientation(q, p, r) == -o);
  }
}

TEST_CASE("segment and line construction") {
  CHECK_THROWS_AS(Segment({1, 1}, {1, 1}), Error);
  CHECK_THROWS_AS(Segment({0, 0}, {NAN, 1}), Error);
  CHECK_THROWS_AS(Line({0, 0}, {0, 0}), Error);
  const Line l({0, 0}, {3, 4});
  CHECK(std::abs(norm(l.direction()) - 1.0) <= 1e-12);
}

TEST_CASE("point to segment distance") {
  auto r = dist_point_segment({0, 2}, Segment({-1, 0}, {1, 0}));
  CHECK(r.distance == 2);
  CHECK(r.closest == Point{0, 0});
  r = dist_point_segment({3, 1}, Segment({0, 0}, {1, 0}));
  CHECK(r.distance == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(r.closest == Point{1, 0});
  CHECK(dist_point_segment({0.5, 0}, Segment({0, 0}, {1, 0})).distance == 0);
}

TEST_CASE("point to line distance") {
  const Line x_axis({0, 0}, {1, 0});
  CHECK(dist_point_line({0, 1}, x_axis) == 1);
  CHECK(dist_point_line({7, 0}, x_axis) == 0);
  CHECK(dist_point_line({3, 4}, x_axis) == 4);
}

TEST_CASE("segment to segment distance") {
  auto r = dist_segment_segment(Segment({0, 0}, {1, 0}), Segment({0, 1}, {1, 1}));
  CHECK(r.distance == 1);
  r = dist_segment_segment(Segment({0, 0}, {2, 2}), Segment({0, 2}, {2, 0}));
  CHECK(r.distance == 0);
  CHECK(r.first == Point{1, 1});
  r = dist_segment_segment(Segment({0, 0}, {1, 0}), Segment({2, 1}, {3, 1}));
  CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.first == Point{1, 0});
  CHECK(r.second == Point{2, 1});
}

TEST_CASE("segment distance against golden-section search") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Segment s1({rng.uniform(-5, 5), rng.uniform(-5, 5)}, {rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const Segment s2({rng.uniform(-5, 5), rng.uniform(-5, 5)}, {rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const auto got = dist_segment_segment(s1, s2);
    const long double expect = std::min(ref::segment_segment_search(s1.a(), s1.b(), s2.a(), s2.b()),
                                        ref::segment_segment_search(s2.a(), s2.b(), s1.a(), s1.b()));
    CHECK(std::abs(got.distance - expect) <= 1e-6);
    CHECK((got.distance == 0) == ref::segments_meet(s1.a(), s1.b(), s2.a(), s2.b()));
  }
}

TEST_CASE("segment distance properties") {
  Rng rng(12);
  for (int i = 0; i < 3000; ++i) {
    // Small integer grid to hit touching and collinear cases often.
    auto pt = [&] { return Point{std::floor(rng.uniform(0, 6)), std::floor(rng.uniform(0, 6))}; };
    Point a = pt(), b = pt(), c = pt(), d = pt();
    if (a == b || c == d) continue;
    const Segment s1(a, b), s2(c, d);
    const auto r12 = dist_segment_segment(s1, s2);
    const auto r21 = dist_segment_segment(s2, s1);
    CHECK(r12.distance == r21.distance);
    CHECK((r12.distance == 0) == segments_intersect(s1, s2));
    CHECK(segments_intersect(s1, s2) == ref::segments_meet(a, b, c, d));
    // Witness pair realizes the distance and lies on the segments.
    CHECK(std::abs(distance(r12.first, r12.second) - r12.distance) <= 1e-9 * std::max(1.0, r12.distance));
    CHECK(ref::point_segment(r12.first, a, b) <= 1e-9);
    CHECK(ref::point_segment(r12.second, c, d) <= 1e-9);
    if (r12.distance > 0) {
      const double four = std::min({dist_point_segment(a, s2).distance, dist_point_segment(b, s2).distance,
                                    dist_point_segment(c, s1).distance, dist_point_segment(d, s1).distance});
      CHECK(r12.distance == four);
    }
  }
}

TEST_CASE("slab membership") {
  const Slab slab = slab_of(Segment({0, 0}, {2, 0}));
  CHECK(slab.contains({1, 5}));
  CHECK_FALSE(slab.contains({3, 0}));
  CHECK(slab.contains({0, -7}));
  CHECK(slab.contains({2, 100}));
  CHECK(std::abs(dot(slab.l1.direction(), slab.base.direction())) <= 1e-12);
  CHECK(dist_point_line(slab.base.a(), slab.l1) == 0);
  CHECK(dist_point_line(slab.base.b(), slab.l2) == 0);
}

TEST_CASE("inside the slab the segment distance is the line distance") {
  Rng rng(13);
  int tested = 0;
  for (int i = 0; i < 5000; ++i) {
    const Segment s({rng.uniform(-5, 5), rng.uniform(-5, 5)}, {rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const Point p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    if (!in_slab(p, s.a(), s.b())) continue;
    ++tested;
    const double seg = dist_point_segment(p, s).distance;
    const double line = dist_point_line(p, Line::through(s.a(), s.b()));
    CHECK(std::abs(seg - line) <= 1e-9 * std::max(1.0, seg));
  }
  CHECK(tested > 500);
}
