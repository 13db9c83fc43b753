#include "hddl/netgen.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hddl/rng.hpp"

namespace hddl {

std::vector<std::vector<NodeId>> unit_disk_adjacency(std::span<const Point> positions,
                                                     double radius) {
  const std::size_t n = positions.size();
  std::vector<std::vector<NodeId>> adj(n);
  const double r2 = radius * radius;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const Point d = positions[v] - positions[u];
      if (dot(d, d) <= r2) {
        adj[u].push_back(static_cast<NodeId>(v));
        adj[v].push_back(static_cast<NodeId>(u));
      }
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<std::vector<NodeId>> gabriel_planarize(
    std::span<const Point> positions, const std::vector<std::vector<NodeId>>& adjacency) {
  const std::size_t n = positions.size();
  std::vector<std::vector<NodeId>> planar(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : adjacency[u]) {
      if (v <= u) continue;
      const Point m = midpoint(positions[u], positions[v]);
      const Point half = positions[v] - m;
      // Shrink slightly so cocircular witnesses do not delete the edge.
      const double r2 = dot(half, half) * (1.0 - 1e-12);
      // Any witness is closer to u than v is, hence a neighbor of u.
      bool keep = true;
      for (NodeId w : adjacency[u]) {
        if (w == v) continue;
        const Point d = positions[w] - m;
        if (dot(d, d) < r2) {
          keep = false;
          break;
        }
      }
      if (keep) {
        planar[u].push_back(v);
        planar[v].push_back(static_cast<NodeId>(u));
      }
    }
  }
  for (auto& list : planar) std::sort(list.begin(), list.end());
  return planar;
}

Network::Network(std::vector<Point> positions, double radius, Area area)
    : positions_(std::move(positions)), radius_(radius), area_(area) {
  if (!(radius_ > 0.0)) throw std::invalid_argument("Network: radius must be positive");
  for (const Point& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("Network: non-finite coordinate");
    }
  }
  adjacency_ = unit_disk_adjacency(positions_, radius_);
  planar_ = gabriel_planarize(positions_, adjacency_);
}

bool Network::adjacent(NodeId u, NodeId v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::string Network::serialize() const {
  std::ostringstream out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "n %zu r %a w %a h %a\n", size(), radius_, area_.width,
                area_.height);
  out << buf;
  for (std::size_t i = 0; i < size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu %a %a\n", i, positions_[i].x, positions_[i].y);
    out << buf;
  }
  auto dump = [&](const char* tag, const std::vector<std::vector<NodeId>>& adj) {
    for (std::size_t u = 0; u < adj.size(); ++u) {
      out << tag << ' ' << u << ':';
      for (NodeId v : adj[u]) out << ' ' << v;
      out << '\n';
    }
  };
  dump("udg", adjacency_);
  dump("gg", planar_);
  return out.str();
}

Network generate(std::uint64_t seed, std::size_t n, Area area, double radius) {
  if (n < 2) throw std::invalid_argument("generate: need at least two nodes");
  auto eng = rng::make_stream(seed, rng::Stream::positions);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng::uniform01(eng) * area.width;
    p.y = rng::uniform01(eng) * area.height;
  }
  return Network(std::move(pts), radius, area);
}

CarveResult carve_hole(const Network& net, Point center, double hole_radius) {
  if (hole_radius < 0.0) throw std::invalid_argument("carve_hole: negative radius");
  std::vector<std::optional<NodeId>> old_to_new(net.size());
  std::vector<Point> kept;
  for (NodeId i = 0; i < net.size(); ++i) {
    if (distance(net.position(i), center) < hole_radius) continue;
    old_to_new[i] = static_cast<NodeId>(kept.size());
    kept.push_back(net.position(i));
  }
  if (kept.size() < 2) throw std::invalid_argument("carve_hole: fewer than two nodes remain");
  return CarveResult{Network(std::move(kept), net.radius(), net.area()), std::move(old_to_new)};
}

std::vector<std::size_t> component_labels(const std::vector<std::vector<NodeId>>& adjacency) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(adjacency.size(), kUnset);
  std::size_t next = 0;
  std::vector<NodeId> stack;
  for (std::size_t s = 0; s < adjacency.size(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.assign(1, static_cast<NodeId>(s));
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : adjacency[u]) {
        if (label[v] == kUnset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::size_t> component_labels(const Network& net, bool planar) {
  std::vector<std::vector<NodeId>> adj(net.size());
  for (NodeId u = 0; u < net.size(); ++u) {
    auto list = planar ? net.planar_neighbors(u) : net.neighbors(u);
    adj[u].assign(list.begin(), list.end());
  }
  return component_labels(adj);
}

std::vector<NodeId> largest_component(const Network& net) {
  const auto label = component_labels(net, false);
  std::vector<std::size_t> count;
  for (std::size_t l : label) {
    if (l >= count.size()) count.resize(l + 1, 0);
    ++count[l];
  }
  const auto best = static_cast<std::size_t>(
      std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<NodeId> out;
  for (NodeId i = 0; i < net.size(); ++i) {
    if (label[i] == best) out.push_back(i);
  }
  return out;
}

Network build_network(const Scenario& scenario) {
  Network net = scenario.nodes.empty()
                    ? generate(scenario.seed, scenario.n, scenario.area, scenario.radius)
                    : Network(scenario.nodes, scenario.radius, scenario.area);
  for (const auto& c : scenario.carve) {
    net = carve_hole(net, Point{c.cx, c.cy}, c.hole_radius).network;
  }
  return net;
}

}  // namespace hddl
