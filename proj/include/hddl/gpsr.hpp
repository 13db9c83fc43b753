#pragma once

#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "hddl/netgen.hpp"

namespace hddl {

enum class HopMode { greedy, perimeter, landmark };

const char* to_string(HopMode mode);

/// A routed packet's trajectory. modes[i] is the mode used for the hop
/// hops[i] -> hops[i + 1].
struct Path {
  std::vector<NodeId> hops;
  std::vector<HopMode> modes;
  bool delivered = false;
  double euclidean_length = 0.0;

  std::size_t hop_count() const { return hops.empty() ? 0 : hops.size() - 1; }
};

/// Neighbor strictly closer to dest than current, nearest first, lower id on
/// ties. nullopt when current is a local minimum.
std::optional<NodeId> greedy_step(const Network& net, NodeId current, Point dest);

/// Per-packet GPSR header.
struct GpsrHeader {
  enum class Mode { greedy, perimeter };
  Mode mode = Mode::greedy;
  /// Where perimeter mode was entered (Lp).
  Point entry_point{};
  /// Where the packet entered the current face (Lf).
  Point face_point{};
  /// First edge traversed on the current face.
  std::optional<std::pair<NodeId, NodeId>> first_edge;
  /// Directed edges already taken on the current face.
  std::set<std::pair<NodeId, NodeId>> face_edges;
};

struct GpsrHop {
  NodeId next;
  HopMode mode;
};

/// One forwarding decision at `current` toward `dest`. `previous` is the
/// node the packet arrived from (needed by the right-hand rule). Returns
/// nullopt when the packet must be dropped: planar degree zero, or the
/// perimeter walk would repeat an edge of its current face.
std::optional<GpsrHop> gpsr_next_hop(const Network& net, NodeId current,
                                     std::optional<NodeId> previous, Point dest,
                                     GpsrHeader& header);

/// Greedy forwarding with perimeter recovery on the Gabriel subgraph.
/// Undeliverable packets and ttl exhaustion yield delivered = false.
Path route_gpsr(const Network& net, NodeId src, NodeId dst, std::size_t ttl);

/// Greedy forwarding only; stops at the first local minimum.
Path route_greedy(const Network& net, NodeId src, NodeId dst, std::size_t ttl);

/// ttl used when callers do not pick one: 4 hops per node.
std::size_t default_ttl(const Network& net);

}  // namespace hddl
