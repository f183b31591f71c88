#include "clearance/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "clearance/error.hpp"

namespace clearance {

namespace {

// Error-free transformations (Knuth two-sum, fma two-product).
inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  const double av = sum - bv;
  err = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& prod, double& err) {
  prod = a * b;
  err = std::fma(a, b, -prod);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Sign of qx*ry - qx*py - px*ry - qy*rx + qy*px + py*rx evaluated as a
// nonoverlapping expansion; the most significant component carries the sign.
int orientation_exact(Point p, Point q, Point r) {
  const std::array<std::array<double, 2>, 6> terms = {{
      {q.x, r.y},
      {-q.x, p.y},
      {-p.x, r.y},
      {-q.y, r.x},
      {q.y, p.x},
      {p.y, r.x},
  }};
  std::array<double, 12> expansion{};
  std::size_t len = 0;
  auto grow = [&](double b) {
    double q_acc = b;
    std::size_t out = 0;
    for (std::size_t i = 0; i < len; ++i) {
      double s, e;
      two_sum(q_acc, expansion[i], s, e);
      q_acc = s;
      if (e != 0.0) expansion[out++] = e;
    }
    if (q_acc != 0.0) expansion[out++] = q_acc;
    len = out;
  };
  for (const auto& t : terms) {
    double prod, err;
    two_product(t[0], t[1], prod, err);
    grow(err);
    grow(prod);
  }
  return len == 0 ? 0 : sign(expansion[len - 1]);
}

}  // namespace

int orientation(Point p, Point q, Point r) {
  const double left = (q.x - p.x) * (r.y - p.y);
  const double right = (q.y - p.y) * (r.x - p.x);
  const double det = left - right;
  constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
  constexpr double bound = (3.0 + 16.0 * eps) * eps;
  const double detsum = std::abs(left) + std::abs(right);
  if (std::abs(det) > bound * detsum) return sign(det);
  return orientation_exact(p, q, r);
}

Segment::Segment(Point a, Point b) : a_(a), b_(b) {
  if (!is_finite(a) || !is_finite(b)) {
    throw Error(ErrorKind::InvalidGeometry, "segment endpoint is not finite");
  }
  if (a == b) {
    throw Error(ErrorKind::InvalidGeometry, "segment endpoints coincide");
  }
}

Line::Line(Point anchor, Point direction) : anchor_(anchor) {
  const double len = norm(direction);
  if (!is_finite(anchor) || !std::isfinite(len) || len == 0.0) {
    throw Error(ErrorKind::InvalidGeometry, "line needs a finite anchor and nonzero direction");
  }
  direction_ = {direction.x / len, direction.y / len};
}

Line Line::through(Point p, Point q) { return Line(p, q - p); }

bool Slab::contains(Point p) const { return in_slab(p, base.a(), base.b()); }

Slab slab_of(const Segment& s) {
  const Point d = s.direction();
  const Point perp{-d.y, d.x};
  return Slab{s, Line(s.a(), perp), Line(s.b(), perp)};
}

PointDistance dist_point_segment(Point p, const Segment& s) {
  const Point a = s.a();
  const Point d = s.direction();
  const double t = dot(p - a, d) / dot(d, d);
  Point foot;
  if (t <= 0.0) {
    foot = a;
  } else if (t >= 1.0) {
    foot = s.b();
  } else {
    foot = a + t * d;
  }
  return {distance(p, foot), foot};
}

double dist_point_line(Point p, const Line& l) { return std::abs(l.signed_distance(p)); }

namespace {

bool on_closed_segment(Point p, Point q, Point r) {
  // r is collinear with pq; check the bounding box.
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

}  // namespace

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_closed_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_closed_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_closed_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_closed_segment(q1, q2, p2)) return true;
  return false;
}

Point intersection_point(const Segment& s, const Segment& t) {
  // Prefer an endpoint lying on the other segment: exact and covers the
  // collinear-overlap case.
  for (Point p : {s.a(), s.b()}) {
    if (orientation(t.a(), t.b(), p) == 0 && on_closed_segment(t.a(), t.b(), p)) return p;
  }
  for (Point p : {t.a(), t.b()}) {
    if (orientation(s.a(), s.b(), p) == 0 && on_closed_segment(s.a(), s.b(), p)) return p;
  }
  const Point d1 = s.direction();
  const Point d2 = t.direction();
  const double denom = cross(d1, d2);
  if (denom == 0.0) return s.a();
  const double u = std::clamp(cross(t.a() - s.a(), d2) / denom, 0.0, 1.0);
  return s.a() + u * d1;
}

PairDistance dist_segment_segment(const Segment& s1, const Segment& s2) {
  if (segments_intersect(s1, s2)) {
    const Point x = intersection_point(s1, s2);
    return {0.0, x, x};
  }
  PairDistance best{std::numeric_limits<double>::infinity(), {}, {}};
  auto consider = [&](double d, Point on1, Point on2) {
    if (d < best.distance) best = {d, on1, on2};
  };
  for (Point p : {s1.a(), s1.b()}) {
    const auto r = dist_point_segment(p, s2);
    consider(r.distance, p, r.closest);
  }
  for (Point p : {s2.a(), s2.b()}) {
    const auto r = dist_point_segment(p, s1);
    consider(r.distance, r.closest, p);
  }
  return best;
}

bool segment_meets_line(Point a, Point b, const Line& l) {
  const double sa = l.signed_distance(a);
  const double sb = l.signed_distance(b);
  return (sa <= 0.0 && sb >= 0.0) || (sa >= 0.0 && sb <= 0.0);
}

}  // namespace clearance
