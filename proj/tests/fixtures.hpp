#pragma once

// Hand-built layouts shared by the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hddl/hole_detect.hpp"
#include "hddl/netgen.hpp"

namespace fixtures {

using hddl::BoundaryLoop;
using hddl::NodeId;
using hddl::Point;
using hddl::Vertex;

inline Point polar(double r, double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  return {r * std::cos(t), r * std::sin(t)};
}

// Intersection of circles (c1, r1) and (c2, r2) farthest from `away`.
inline Point circle_meet(Point c1, double r1, Point c2, double r2, Point away) {
  const Point d = c2 - c1;
  const double len = hddl::norm(d);
  const double along = (r1 * r1 - r2 * r2 + len * len) / (2.0 * len);
  const double h = std::sqrt(r1 * r1 - along * along);
  const Point m = c1 + (along / len) * d;
  const Point off = (h / len) * Point{d.y, -d.x};
  const Point s1 = m + off, s2 = m - off;
  return hddl::distance(s1, away) > hddl::distance(s2, away) ? s1 : s2;
}

// Regular k-gon of radius 1, vertex 0 is the initiator.
inline BoundaryLoop circle_loop(int k) {
  std::vector<Vertex> v;
  for (int i = 0; i < k; ++i) {
    v.push_back({static_cast<NodeId>(i), polar(1.0, -360.0 * i / k)});
  }
  return BoundaryLoop(v);
}

// Equilateral p, b with a moved to a' so |pa'| = |a'b| = range; p and b are
// out of range of each other, so the probe walk is p a' b a'.
struct NearEquilateral {
  BoundaryLoop loop;
  NodeId b;
};
inline NearEquilateral near_equilateral_walk(double range) {
  const Point p{0, 0}, b{1, 0};
  const Point a{0.5, std::sqrt(range * range - 0.25)};
  return {BoundaryLoop({{0, p}, {1, a}, {2, b}, {1, a}}), 2};
}

// Polygon p a e d f b with |pd| = 0.95, |ad| = |bd| = 1, |ed| = |df| = 0.9,
// |ap| = |pb| = 0.9, and e, f on segments ad, bd (|ae| = |bf| = 0.1).
struct ShortDiagonal {
  BoundaryLoop loop;
  NodeId p = 0, a = 1, e = 2, d = 3, f = 4, b = 5;
};
inline ShortDiagonal short_diagonal_hexagon() {
  const Point p{0, 0}, d{0, 0.95};
  const double y = (0.81 - 1.0 + 0.95 * 0.95) / (2.0 * 0.95);
  const Point a{-std::sqrt(0.81 - y * y), y};
  const Point b{-a.x, a.y};
  const Point e = a + 0.1 * (d - a);
  const Point f = b + 0.1 * (d - b);
  return {BoundaryLoop({{0, p}, {1, a}, {2, e}, {3, d}, {4, f}, {5, b}})};
}

// Six nodes on the cycle p e a d c b at range 0.9: |pe| = |ea| = |ad| =
// |dc| = |cb| = |bp| = 0.9, |pd| = 1, and no chords.
struct LongDetour {
  std::vector<Point> points;
  NodeId p = 0, e = 1, a = 2, d = 3, c = 4, b = 5;
  static constexpr double range = 0.9;
  // Edges sit exactly at range; the slack absorbs rounding in the layout.
  static constexpr double link_range = range * (1 + 1e-9);
  hddl::Network network() const { return hddl::Network(points, link_range, hddl::Area{4, 4}); }
  // Adds a source s inside triangle e p k, within range of both e and p.
  NodeId s = 6;
  hddl::Network network_with_source() const {
    auto pts = points;
    pts.push_back(Point{1.337, 0.754});
    return hddl::Network(pts, link_range, hddl::Area{4, 4});
  }
};
inline LongDetour long_detour_hexagon() {
  const Point p{0, 0}, d{0, 1};
  const Point e = polar(0.9, 150.0);
  const Point b = polar(0.9, 10.0);
  const Point a = circle_meet(e, 0.9, d, 0.9, p);
  const Point c = circle_meet(b, 0.9, d, 0.9, p);
  LongDetour f;
  // Shift into the positive quadrant; distances are unchanged.
  const Point shift{2, 1};
  for (Point q : {p, e, a, d, c, b}) f.points.push_back(q + shift);
  return f;
}

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace fixtures
