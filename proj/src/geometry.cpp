#include "hddl/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace hddl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCollinearTolerance = 1e-9;
constexpr double kAngleTieTolerance = 1e-12;

// Relative tolerance used for strip-end and triangle-edge inclusivity.
constexpr double kBoundaryTolerance = 1e-12;

}  // namespace

double polar_angle(Point v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double ccw_delta(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  if (d >= kTwoPi) d -= kTwoPi;
  return d;
}

Side side_of_line(const Segment& s, Point p) {
  const Point dir = s.b - s.a;
  const Point off = p - s.a;
  const double c = cross(dir, off);
  if (std::abs(c) <= kCollinearTolerance * norm(dir) * norm(off)) return Side::on;
  return c > 0.0 ? Side::left : Side::right;
}

double angle_between(Point prev, Point apex, Point next) {
  if (prev == apex || next == apex) {
    throw std::invalid_argument("angle_between: endpoint coincides with apex");
  }
  const double from = polar_angle(prev - apex);
  const double to = polar_angle(next - apex);
  return ccw_delta(from, to) * 180.0 / std::numbers::pi;
}

SweepResult sweep_neighbors(Point apex, Point bisector_dir, std::span<const Point> neighbors) {
  if (neighbors.empty()) throw std::invalid_argument("sweep_neighbors: no neighbors");
  const double start = polar_angle(bisector_dir);

  auto better = [&](double delta, double dist, double best_delta, double best_dist) {
    if (delta < best_delta - kAngleTieTolerance) return true;
    if (delta > best_delta + kAngleTieTolerance) return false;
    return dist < best_dist;
  };

  SweepResult r{0, 0};
  double best_ccw = kTwoPi, best_cw = kTwoPi;
  double dist_ccw = 0.0, dist_cw = 0.0;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const Point v = neighbors[i] - apex;
    const double angle = polar_angle(v);
    const double dist = norm(v);
    double ccw = ccw_delta(start, angle);
    double cw = ccw_delta(angle, start);
    if (ccw > kTwoPi - kAngleTieTolerance) ccw = 0.0;
    if (cw > kTwoPi - kAngleTieTolerance) cw = 0.0;
    if (i == 0 || better(ccw, dist, best_ccw, dist_ccw)) {
      best_ccw = ccw;
      dist_ccw = dist;
      r.leftmost = i;
    }
    if (i == 0 || better(cw, dist, best_cw, dist_cw)) {
      best_cw = cw;
      dist_cw = dist;
      r.rightmost = i;
    }
  }
  return r;
}

namespace {

// Position of d's projection along a->b, as a fraction of |ab|.
double projection_fraction(Point a, Point b, Point d) {
  const Point ab = b - a;
  return dot(d - a, ab) / dot(ab, ab);
}

}  // namespace

bool ShadedRegion::contains(Point d) const {
  if (side_of_line(Segment{a, b}, d) != far_side) return false;
  const double t = projection_fraction(a, b, d);
  return t >= -kBoundaryTolerance && t <= 1.0 + kBoundaryTolerance;
}

LandmarkSide landmark_subregion(const ShadedRegion& region, Point d) {
  if (!region.contains(d)) {
    throw std::invalid_argument("landmark_subregion: point outside shaded region");
  }
  const double t = projection_fraction(region.a, region.b, d);
  return t <= 0.5 + kBoundaryTolerance ? LandmarkSide::a_side : LandmarkSide::b_side;
}

bool AnnouncementTriangle::contains(Point p) const {
  const double scale = std::max({norm(f - e), norm(k - f), norm(e - k)});
  const double tol = kBoundaryTolerance * scale * scale;
  const double d1 = cross(f - e, p - e);
  const double d2 = cross(k - f, p - f);
  const double d3 = cross(e - k, p - k);
  const bool has_neg = d1 < -tol || d2 < -tol || d3 < -tol;
  const bool has_pos = d1 > tol || d2 > tol || d3 > tol;
  return !(has_neg && has_pos);
}

double AnnouncementTriangle::area() const { return 0.5 * std::abs(cross(f - e, k - e)); }

}  // namespace hddl
