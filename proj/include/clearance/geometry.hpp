#pragma once

#include <cmath>
#include <optional>

namespace clearance {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Lexicographic (x, then y) order. Acts as a symbolic shear that puts all
// points in general position for x-sweep structures.
constexpr bool lex_less(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// Sign of the turn p -> q -> r: +1 counterclockwise, -1 clockwise, 0 collinear.
/// Exact for all finite double inputs (floating-point filter with an exact
/// expansion fallback); only overflow or underflow can defeat it.
int orientation(Point p, Point q, Point r);

/// A proper segment. Construction rejects coincident or non-finite endpoints.
class Segment {
 public:
  Segment(Point a, Point b);

  Point a() const { return a_; }
  Point b() const { return b_; }
  Point direction() const { return b_ - a_; }
  double length() const { return distance(a_, b_); }

  friend bool operator==(const Segment&, const Segment&) = default;

 private:
  Point a_;
  Point b_;
};

/// Infinite line through `anchor` with a unit direction.
class Line {
 public:
  /// Normalizes `direction`; throws if it is zero or non-finite.
  Line(Point anchor, Point direction);
  static Line through(Point p, Point q);

  Point anchor() const { return anchor_; }
  Point direction() const { return direction_; }
  Point normal() const { return {-direction_.y, direction_.x}; }

  // Signed perpendicular offset, positive on the left of the direction.
  double signed_distance(Point p) const { return cross(direction_, p - anchor_); }

 private:
  Point anchor_;
  Point direction_;
};

/// Closed region between the perpendiculars to `base` through its endpoints.
struct Slab {
  Segment base;
  Line l1;
  Line l2;

  bool contains(Point p) const;
};

Slab slab_of(const Segment& s);

/// Closed slab membership test shared by every slab query and its oracles so
/// that all of them classify boundary points identically.
inline bool in_slab(Point p, Point a, Point b) {
  const Point d = b - a;
  return dot(p - a, d) >= 0.0 && dot(p - b, d) <= 0.0;
}

struct PointDistance {
  double distance;
  Point closest;  // realizes `distance`
};

struct PairDistance {
  double distance;
  Point first;   // on the first argument
  Point second;  // on the second argument
};

PointDistance dist_point_segment(Point p, const Segment& s);
double dist_point_line(Point p, const Line& l);

/// Minimum over the endpoint/segment configurations, or zero with the
/// crossing point when the segments meet (touching included).
PairDistance dist_segment_segment(const Segment& s1, const Segment& s2);

/// Closed intersection test, exact via orientation signs.
bool segments_intersect(Point p1, Point p2, Point q1, Point q2);
inline bool segments_intersect(const Segment& s, const Segment& t) {
  return segments_intersect(s.a(), s.b(), t.a(), t.b());
}

/// A point common to both segments, assuming they intersect.
Point intersection_point(const Segment& s, const Segment& t);

/// True when the closed segment touches or crosses the line.
bool segment_meets_line(Point a, Point b, const Line& l);

}  // namespace clearance
