#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace hddl {

/// A location in the deployment plane, in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point p, Point q) = default;
};

constexpr double dot(Point u, Point v) { return u.x * v.x + u.y * v.y; }
constexpr double cross(Point u, Point v) { return u.x * v.y - u.y * v.x; }
inline double norm(Point v) { return std::hypot(v.x, v.y); }
inline double distance(Point p, Point q) { return norm(q - p); }
constexpr Point midpoint(Point p, Point q) { return {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)}; }

/// Polar angle of v in radians, normalized to [0, 2pi).
double polar_angle(Point v);

/// Counter-clockwise rotation needed to go from angle `from` to angle `to`,
/// in [0, 2pi).
double ccw_delta(double from, double to);

struct Segment {
  Point a;
  Point b;
};

enum class Side { left, right, on };

constexpr Side opposite(Side s) {
  return s == Side::left ? Side::right : s == Side::right ? Side::left : Side::on;
}

/// Sign of cross(b - a, p - a). Points whose cross product is below
/// 1e-9 * |b - a| * |p - a| count as collinear.
Side side_of_line(const Segment& s, Point p);

/// Counter-clockwise angle in degrees swept from ray apex->prev to ray
/// apex->next, in [0, 360). Throws std::invalid_argument when either
/// endpoint coincides with the apex.
double angle_between(Point prev, Point apex, Point next);

struct SweepResult {
  std::size_t leftmost;
  std::size_t rightmost;
};

/// Rotates a ray from `apex` along `bisector_dir`. `leftmost` is the first
/// neighbor met turning counter-clockwise, `rightmost` the first met turning
/// clockwise. Equal angles go to the nearer neighbor, then to the lower
/// index, so callers should pass neighbors in node-id order. Neighbors lying
/// exactly on the starting ray are met first in both directions.
SweepResult sweep_neighbors(Point apex, Point bisector_dir, std::span<const Point> neighbors);

/// The half-strip behind segment ab: bounded by line ab and the two
/// perpendiculars through a and b, on `far_side` of the directed line a->b.
struct ShadedRegion {
  Point a;
  Point b;
  Side far_side = Side::left;

  bool contains(Point d) const;
};

enum class LandmarkSide { a_side, b_side };

/// Splits the shaded region by the perpendicular through the midpoint of ab.
/// Points on the dividing line belong to a's half. Throws
/// std::invalid_argument if d lies outside the region.
LandmarkSide landmark_subregion(const ShadedRegion& region, Point d);

struct AnnouncementTriangle {
  Point e;
  Point f;
  Point k;

  /// Boundary-inclusive point-in-triangle test.
  bool contains(Point p) const;
  double area() const;
};

}  // namespace hddl
