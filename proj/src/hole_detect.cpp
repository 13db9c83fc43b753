#include "hddl/hole_detect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hddl {

void validate(const DetectionConfig& cfg) {
  if (!(cfg.delta > 1.0)) throw std::invalid_argument("DetectionConfig: delta must exceed 1");
  if (!(cfg.angle_threshold > 0.0 && cfg.angle_threshold < 360.0)) {
    throw std::invalid_argument("DetectionConfig: angle threshold must be in (0, 360)");
  }
}

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t budget_for(const Network& net, const DetectionConfig& cfg) {
  return cfg.probe_hop_budget ? cfg.probe_hop_budget : 2 * net.size();
}

}  // namespace

std::optional<Initiation> should_initiate(const Network& net, NodeId node,
                                          const std::set<NodeId>& suppressed,
                                          const DetectionConfig& cfg) {
  if (suppressed.contains(node)) return std::nullopt;
  if (net.neighbors(node).size() < 2) return std::nullopt;
  const auto nbrs = net.planar_neighbors(node);

  const Point here = net.position(node);
  std::vector<double> angles;
  angles.reserve(nbrs.size());
  for (NodeId v : nbrs) angles.push_back(polar_angle(net.position(v) - here));
  std::vector<double> sorted = angles;
  std::sort(sorted.begin(), sorted.end());

  double widest = -1.0, gap_start = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double from = sorted[i];
    const double to = sorted[(i + 1) % sorted.size()];
    double gap = ccw_delta(from, to);
    if (i + 1 == sorted.size() && gap == 0.0) gap = kTwoPi;
    if (gap > widest) {
      widest = gap;
      gap_start = from;
    }
  }
  const double gap_degrees = widest * kRadToDeg;
  if (!(gap_degrees > cfg.angle_threshold)) return std::nullopt;

  const double mid = gap_start + 0.5 * widest;
  const Point bisector{std::cos(mid), std::sin(mid)};
  std::vector<Point> pts;
  pts.reserve(nbrs.size());
  for (NodeId v : nbrs) pts.push_back(net.position(v));
  const SweepResult sweep = sweep_neighbors(here, bisector, pts);
  return Initiation{nbrs[sweep.leftmost], nbrs[sweep.rightmost], bisector, gap_degrees};
}

BoundaryLoop::BoundaryLoop(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw std::invalid_argument("BoundaryLoop: need two vertices");
  ccw_prefix_.assign(vertices_.size(), 0.0);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    ccw_prefix_[i] = ccw_prefix_[i - 1] + distance(vertices_[i - 1].pos, vertices_[i].pos);
  }
  perimeter_ = ccw_prefix_.back() + distance(vertices_.back().pos, vertices_.front().pos);
  cw_prefix_.assign(vertices_.size(), 0.0);
  for (std::size_t i = 1; i < vertices_.size(); ++i) cw_prefix_[i] = perimeter_ - ccw_prefix_[i];
}

bool BoundaryLoop::contains(NodeId v) const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [v](const Vertex& x) { return x.id == v; });
}

double BoundaryLoop::probe_length(NodeId v) const {
  std::optional<double> ccw, cw;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id != v) continue;
    if (!ccw) ccw = ccw_prefix_[i];
    cw = cw_prefix_[i];
  }
  if (!ccw) throw std::invalid_argument("probe_length: vertex not on loop");
  return std::min(*ccw, *cw);
}

double BoundaryLoop::enclosed_area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point p = vertices_[i].pos;
    const Point q = vertices_[(i + 1) % vertices_.size()].pos;
    twice += cross(p, q);
  }
  return 0.5 * std::abs(twice);
}

ProbeOutcome run_probe(const Network& net, NodeId initiator, NodeId first_hop,
                       ProbeDirection direction, std::size_t hop_budget) {
  ProbeOutcome out{{initiator, direction, {{initiator, net.position(initiator)}}, hop_budget}};
  ProbeMessage& msg = out.message;
  NodeId prev = initiator;
  NodeId cur = first_hop;
  std::size_t hops = 1;
  while (cur != initiator) {
    if (hops > hop_budget) return out;
    const Point here = net.position(cur);
    msg.visited.push_back({cur, here});
    // A pendant sends the probe back the way it came; a walk that only
    // retraces a tree is rejected later for enclosing no area.
    const auto nbrs = net.planar_neighbors(cur);

    const double reference = polar_angle(net.position(prev) - here);
    std::optional<NodeId> next;
    double best = 0.0;
    for (NodeId v : nbrs) {
      const double a = polar_angle(net.position(v) - here);
      double turn = direction == ProbeDirection::counter_clockwise ? ccw_delta(reference, a)
                                                                   : ccw_delta(a, reference);
      if (v == prev || turn < 1e-12) turn = kTwoPi;
      if (!next || turn < best) {
        next = v;
        best = turn;
      }
    }
    prev = cur;
    cur = *next;
    ++hops;
  }
  out.returned = true;
  return out;
}

bool encloses_other_nodes(const Network& net, const BoundaryLoop& loop) {
  const auto& verts = loop.vertices();
  Point lo = verts.front().pos, hi = lo;
  for (const auto& v : verts) {
    lo = {std::min(lo.x, v.pos.x), std::min(lo.y, v.pos.y)};
    hi = {std::max(hi.x, v.pos.x), std::max(hi.y, v.pos.y)};
  }
  for (NodeId u = 0; u < net.size(); ++u) {
    const Point q = net.position(u);
    if (q.x <= lo.x || q.x >= hi.x || q.y <= lo.y || q.y >= hi.y) continue;
    if (loop.contains(u)) continue;
    // Even-odd ray cast toward +x.
    bool inside = false;
    for (std::size_t i = 0, j = verts.size() - 1; i < verts.size(); j = i++) {
      const Point a = verts[i].pos, b = verts[j].pos;
      if ((a.y > q.y) != (b.y > q.y) && q.x < a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y)) {
        inside = !inside;
      }
    }
    if (inside) return true;
  }
  return false;
}

CirculationResult circulate(const Network& net, NodeId initiator, const Initiation& init,
                            const DetectionConfig& cfg) {
  const std::size_t budget = budget_for(net, cfg);
  CirculationResult out;
  out.heard.insert(initiator);

  auto ccw = run_probe(net, initiator, init.leftmost, ProbeDirection::counter_clockwise, budget);
  auto cw = run_probe(net, initiator, init.rightmost, ProbeDirection::clockwise, budget);
  for (const auto* probe : {&ccw, &cw}) {
    for (const auto& v : probe->message.visited) out.heard.insert(v.id);
    // Every visited node transmits once, except where the probe died.
    out.messages += probe->message.visited.size() - (probe->returned ? 0 : 1);
  }
  if (!ccw.returned || !cw.returned) return out;

  std::set<NodeId> distinct;
  for (const auto& v : ccw.message.visited) distinct.insert(v.id);
  if (distinct.size() < 3) return out;
  BoundaryLoop loop(std::move(ccw.message.visited));
  if (!(loop.enclosed_area() > 1e-9 * loop.perimeter() * loop.perimeter())) return out;
  if (encloses_other_nodes(net, loop)) return out;
  out.loop = std::move(loop);
  return out;
}

std::optional<BoundaryLoop> circulate(const Network& net, NodeId initiator,
                                      const DetectionConfig& cfg) {
  const auto init = should_initiate(net, initiator, {}, cfg);
  if (!init) return std::nullopt;
  return circulate(net, initiator, *init, cfg).loop;
}

double hole_ratio(const BoundaryLoop& loop, NodeId v) {
  if (v == loop.initiator()) throw std::invalid_argument("hole_ratio: v is the initiator");
  const double along = loop.probe_length(v);
  for (const auto& x : loop.vertices()) {
    if (x.id == v) return along / distance(loop.initiator_pos(), x.pos);
  }
  throw std::invalid_argument("hole_ratio: vertex not on loop");
}

std::optional<HoleEvidence> detect(const BoundaryLoop& loop, const DetectionConfig& cfg,
                                   std::size_t* evaluations) {
  std::set<NodeId> seen{loop.initiator()};
  for (const auto& v : loop.vertices()) {
    if (!seen.insert(v.id).second) continue;
    const double r = hole_ratio(loop, v.id);
    if (evaluations) ++*evaluations;
    if (r > cfg.delta) return HoleEvidence{v.id, r};
  }
  return std::nullopt;
}

DetectionPass run_detection(const Network& net, const DetectionConfig& cfg) {
  validate(cfg);
  DetectionPass pass;
  std::set<NodeId> suppressed;
  for (NodeId u = 0; u < net.size(); ++u) {
    const auto init = should_initiate(net, u, suppressed, cfg);
    if (!init) continue;
    auto result = circulate(net, u, *init, cfg);
    pass.probe_messages += result.messages;
    suppressed.insert(result.heard.begin(), result.heard.end());
    if (!result.loop) continue;
    auto evidence = detect(*result.loop, cfg, &pass.ratio_evaluations);
    pass.loops.push_back(DetectedLoop{std::move(*result.loop), evidence});
  }
  return pass;
}

}  // namespace hddl
