#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hddl/geometry.hpp"

namespace hddl {

using NodeId = std::uint32_t;

struct Area {
  double width = 400.0;
  double height = 400.0;
};

/// An immutable deployment: node positions, the unit-disk graph over them,
/// and its Gabriel subgraph. Node ids are dense, 0..size()-1, and neighbor
/// lists are sorted by id.
class Network {
 public:
  Network(std::vector<Point> positions, double radius, Area area);

  std::size_t size() const { return positions_.size(); }
  double radius() const { return radius_; }
  const Area& area() const { return area_; }

  Point position(NodeId id) const { return positions_[id]; }
  std::span<const Point> positions() const { return positions_; }
  std::span<const NodeId> neighbors(NodeId id) const { return adjacency_[id]; }
  std::span<const NodeId> planar_neighbors(NodeId id) const { return planar_[id]; }
  bool adjacent(NodeId u, NodeId v) const;

  /// Canonical text form: positions as hex floats, then both edge lists.
  std::string serialize() const;

 private:
  std::vector<Point> positions_;
  double radius_;
  Area area_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::vector<NodeId>> planar_;
};

/// Unit-disk adjacency: u ~ v iff u != v and |uv| <= radius.
std::vector<std::vector<NodeId>> unit_disk_adjacency(std::span<const Point> positions,
                                                     double radius);

/// Gabriel subgraph of `adjacency`: (u,v) survives iff no third node lies
/// strictly inside the circle with diameter uv.
std::vector<std::vector<NodeId>> gabriel_planarize(
    std::span<const Point> positions, const std::vector<std::vector<NodeId>>& adjacency);

/// n points i.i.d. uniform over the area, drawn from the positions stream.
Network generate(std::uint64_t seed, std::size_t n, Area area, double radius);

struct CarveResult {
  Network network;
  /// old id -> new id, empty for removed nodes.
  std::vector<std::optional<NodeId>> old_to_new;
};

/// Removes every node strictly closer than hole_radius to center and
/// re-densifies ids. Throws std::invalid_argument if fewer than two nodes
/// remain or hole_radius is negative.
CarveResult carve_hole(const Network& net, Point center, double hole_radius);

/// Connected components of an adjacency structure; label per node, labels
/// numbered by first appearance in id order.
std::vector<std::size_t> component_labels(const std::vector<std::vector<NodeId>>& adjacency);
std::vector<std::size_t> component_labels(const Network& net, bool planar);

/// Nodes of the largest unit-disk component (lowest label on ties), sorted.
std::vector<NodeId> largest_component(const Network& net);

struct CarveDirective {
  double cx = 0.0;
  double cy = 0.0;
  double hole_radius = 0.0;
};

/// One network description. An explicit node list overrides generation.
struct Scenario {
  std::uint64_t seed = 1;
  std::size_t n = 150;
  Area area{};
  double radius = 20.0;
  std::vector<Point> nodes;
  std::vector<CarveDirective> carve;
};

Network build_network(const Scenario& scenario);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

}  // namespace hddl
