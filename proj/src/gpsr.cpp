#include "hddl/gpsr.hpp"

#include <numbers>

namespace hddl {

const char* to_string(HopMode mode) {
  switch (mode) {
    case HopMode::greedy: return "greedy";
    case HopMode::perimeter: return "perimeter";
    case HopMode::landmark: return "landmark";
  }
  return "?";
}

std::size_t default_ttl(const Network& net) { return 4 * net.size(); }

std::optional<NodeId> greedy_step(const Network& net, NodeId current, Point dest) {
  double best = distance(net.position(current), dest);
  std::optional<NodeId> choice;
  // Neighbor lists are id-sorted, so strict < keeps the lower id on ties.
  for (NodeId v : net.neighbors(current)) {
    const double d = distance(net.position(v), dest);
    if (d < best) {
      best = d;
      choice = v;
    }
  }
  return choice;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// First planar neighbor met rotating counter-clockwise from `angle`. A
// neighbor lying exactly on the starting ray is taken last.
std::optional<NodeId> ccw_planar_neighbor(const Network& net, NodeId u, double angle) {
  const Point here = net.position(u);
  std::optional<NodeId> best;
  double best_delta = 0.0;
  for (NodeId v : net.planar_neighbors(u)) {
    double delta = ccw_delta(angle, polar_angle(net.position(v) - here));
    if (delta < 1e-12) delta = kTwoPi;
    if (!best || delta < best_delta) {
      best = v;
      best_delta = delta;
    }
  }
  return best;
}

// Intersection of segments p1p2 and q1q2, if any.
std::optional<Point> intersect(Point p1, Point p2, Point q1, Point q2) {
  const Point r = p2 - p1;
  const Point s = q2 - q1;
  const double denom = cross(r, s);
  if (std::abs(denom) < 1e-15 * norm(r) * norm(s)) return std::nullopt;
  const Point w = q1 - p1;
  const double t = cross(w, s) / denom;
  const double u = cross(w, r) / denom;
  constexpr double eps = 1e-12;
  if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) return std::nullopt;
  return p1 + t * r;
}

std::optional<GpsrHop> perimeter_forward(const Network& net, NodeId current, NodeId next,
                                         Point dest, GpsrHeader& hdr) {
  const Point here = net.position(current);
  // Face change: while the chosen edge crosses entry->dest closer to dest
  // than the current face entry, rotate onto the adjacent face.
  const std::size_t limit = net.planar_neighbors(current).size() + 1;
  for (std::size_t i = 0; i < limit; ++i) {
    const Point there = net.position(next);
    const auto x = intersect(hdr.entry_point, dest, here, there);
    if (!x) break;
    const double scale = distance(hdr.entry_point, dest);
    if (!(distance(*x, dest) < distance(hdr.face_point, dest) - 1e-12 * scale)) break;
    hdr.face_point = *x;
    hdr.first_edge.reset();
    hdr.face_edges.clear();
    next = *ccw_planar_neighbor(net, current, polar_angle(there - here));
  }
  const std::pair<NodeId, NodeId> edge{current, next};
  if (!hdr.first_edge) hdr.first_edge = edge;
  if (!hdr.face_edges.insert(edge).second) return std::nullopt;
  return GpsrHop{next, HopMode::perimeter};
}

}  // namespace

std::optional<GpsrHop> gpsr_next_hop(const Network& net, NodeId current,
                                     std::optional<NodeId> previous, Point dest,
                                     GpsrHeader& hdr) {
  const Point here = net.position(current);
  if (hdr.mode == GpsrHeader::Mode::perimeter &&
      distance(here, dest) < distance(hdr.entry_point, dest)) {
    hdr = GpsrHeader{};
  }
  if (hdr.mode == GpsrHeader::Mode::greedy) {
    if (auto n = greedy_step(net, current, dest)) return GpsrHop{*n, HopMode::greedy};
    hdr.mode = GpsrHeader::Mode::perimeter;
    hdr.entry_point = here;
    hdr.face_point = here;
    hdr.first_edge.reset();
    hdr.face_edges.clear();
    auto next = ccw_planar_neighbor(net, current, polar_angle(dest - here));
    if (!next) return std::nullopt;
    return perimeter_forward(net, current, *next, dest, hdr);
  }
  const double reference = previous ? polar_angle(net.position(*previous) - here)
                                    : polar_angle(dest - here);
  auto next = ccw_planar_neighbor(net, current, reference);
  if (!next) return std::nullopt;
  return perimeter_forward(net, current, *next, dest, hdr);
}

namespace {

void append_hop(const Network& net, Path& path, NodeId next, HopMode mode) {
  path.euclidean_length += distance(net.position(path.hops.back()), net.position(next));
  path.hops.push_back(next);
  path.modes.push_back(mode);
}

}  // namespace

Path route_gpsr(const Network& net, NodeId src, NodeId dst, std::size_t ttl) {
  Path path;
  path.hops.push_back(src);
  const Point dest = net.position(dst);
  GpsrHeader hdr;
  std::optional<NodeId> prev;
  NodeId cur = src;
  while (cur != dst && path.hop_count() < ttl) {
    const auto hop = gpsr_next_hop(net, cur, prev, dest, hdr);
    if (!hop) break;
    append_hop(net, path, hop->next, hop->mode);
    prev = cur;
    cur = hop->next;
  }
  path.delivered = cur == dst;
  return path;
}

Path route_greedy(const Network& net, NodeId src, NodeId dst, std::size_t ttl) {
  Path path;
  path.hops.push_back(src);
  const Point dest = net.position(dst);
  NodeId cur = src;
  while (cur != dst && path.hop_count() < ttl) {
    const auto next = greedy_step(net, cur, dest);
    if (!next) break;
    append_hop(net, path, *next, HopMode::greedy);
    cur = *next;
  }
  path.delivered = cur == dst;
  return path;
}

}  // namespace hddl
