#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hddl/gpsr.hpp"
#include "hddl/hole_model.hpp"

namespace hddl {

/// A packet in flight under HDDL forwarding.
struct Packet {
  NodeId src;
  NodeId dst;
  Point dst_pos;
  /// Landmark the packet is currently heading for, if any.
  std::optional<Vertex> tentative;
  /// Holder sequence, current holder last.
  std::vector<NodeId> trace;
  /// mode_trace[i] is the mode of hop trace[i] -> trace[i + 1].
  std::vector<HopMode> mode_trace;
  /// GPSR state of the current leg; reset whenever the target changes.
  GpsrHeader header;
  /// Holes (indices into HoleCaches::holes) this packet already detoured
  /// around. A hole is used at most once per packet so two caches cannot
  /// bounce it between landmarks.
  std::set<std::size_t> used_holes;
  /// Every landmark written into the header, in order.
  std::vector<NodeId> landmarks_set;

  Packet(const Network& net, NodeId source, NodeId destination);
};

/// Decision at the packet's current holder (trace.back()). Updates the
/// tentative target and GPSR header; returns nullopt when the packet is
/// dropped. Hops toward a landmark made greedily are tagged landmark.
std::optional<GpsrHop> hddl_forward(const Network& net, const HoleCaches& caches, Packet& pkt);

/// Index of the cached hole that diverts a packet at `node` bound for
/// `dst`: node and dst on opposite sides of ab and dst inside the shaded
/// region. Among several, the one whose ab midpoint is nearest to node
/// (lower index on ties). Holes in `skip` are ignored.
std::optional<std::size_t> matching_hole(const Network& net, const HoleCaches& caches,
                                         NodeId node, Point dst,
                                         const std::set<std::size_t>& skip = {});

struct HddlPath {
  Path path;
  std::vector<NodeId> landmarks_set;
  bool used_hole() const { return !landmarks_set.empty(); }
};

/// Iterates hddl_forward until delivery, a drop, or ttl hops.
HddlPath route_hddl(const Network& net, const HoleCaches& caches, NodeId src, NodeId dst,
                    std::size_t ttl);

}  // namespace hddl
