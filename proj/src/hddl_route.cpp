#include "hddl/hddl_route.hpp"

#include <stdexcept>

namespace hddl {

Packet::Packet(const Network& net, NodeId source, NodeId destination)
    : src(source), dst(destination), dst_pos(net.position(destination)), trace{source} {}

std::optional<std::size_t> matching_hole(const Network& net, const HoleCaches& caches,
                                         NodeId node, Point dst,
                                         const std::set<std::size_t>& skip) {
  if (caches.entries.empty()) return std::nullopt;
  const Point here = net.position(node);
  std::optional<std::size_t> best;
  double best_d = 0.0;
  for (std::size_t h : caches.entries[node]) {
    if (skip.contains(h)) continue;
    const HoleRecord& rec = caches.holes[h];
    const Segment ab{rec.a.pos, rec.b.pos};
    const Side node_side = side_of_line(ab, here);
    const Side dst_side = side_of_line(ab, dst);
    if (node_side == Side::on || dst_side != opposite(node_side)) continue;
    if (!rec.shaded.contains(dst)) continue;
    const double d = distance(here, midpoint(rec.a.pos, rec.b.pos));
    if (!best || d < best_d) {
      best = h;
      best_d = d;
    }
  }
  return best;
}

std::optional<GpsrHop> hddl_forward(const Network& net, const HoleCaches& caches, Packet& pkt) {
  const NodeId node = pkt.trace.back();
  const std::optional<NodeId> previous =
      pkt.trace.size() >= 2 ? std::optional<NodeId>(pkt.trace[pkt.trace.size() - 2])
                            : std::nullopt;

  if (pkt.tentative && pkt.tentative->id == node) {
    pkt.tentative.reset();
    pkt.header = GpsrHeader{};
  }
  if (!pkt.tentative) {
    if (auto h = matching_hole(net, caches, node, pkt.dst_pos, pkt.used_holes)) {
      const HoleRecord& rec = caches.holes[*h];
      const Vertex target =
          landmark_subregion(rec.shaded, pkt.dst_pos) == LandmarkSide::a_side ? rec.a : rec.b;
      pkt.used_holes.insert(*h);
      pkt.landmarks_set.push_back(target.id);
      pkt.header = GpsrHeader{};
      if (target.id != node) pkt.tentative = target;
    }
  }
  if (pkt.tentative) {
    auto hop = gpsr_next_hop(net, node, previous, pkt.tentative->pos, pkt.header);
    if (hop && hop->mode == HopMode::greedy) hop->mode = HopMode::landmark;
    return hop;
  }
  return gpsr_next_hop(net, node, previous, pkt.dst_pos, pkt.header);
}

HddlPath route_hddl(const Network& net, const HoleCaches& caches, NodeId src, NodeId dst,
                    std::size_t ttl) {
  if (src == dst) throw std::invalid_argument("route_hddl: src == dst");
  Packet pkt(net, src, dst);
  HddlPath out;
  out.path.hops.push_back(src);
  while (pkt.trace.back() != dst && out.path.hop_count() < ttl) {
    const auto hop = hddl_forward(net, caches, pkt);
    if (!hop) break;
    const NodeId cur = pkt.trace.back();
    out.path.euclidean_length += distance(net.position(cur), net.position(hop->next));
    out.path.hops.push_back(hop->next);
    out.path.modes.push_back(hop->mode);
    pkt.trace.push_back(hop->next);
    pkt.mode_trace.push_back(hop->mode);
  }
  out.path.delivered = pkt.trace.back() == dst;
  out.landmarks_set = std::move(pkt.landmarks_set);
  return out;
}

}  // namespace hddl
