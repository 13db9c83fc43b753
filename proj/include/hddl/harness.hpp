#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hddl/hddl_route.hpp"
#include "hddl/hole_detect.hpp"
#include "hddl/hole_model.hpp"
#include "hddl/netgen.hpp"

namespace hddl {

struct ExperimentConfig {
  std::vector<std::size_t> node_counts{50, 100, 150, 200, 250, 300};
  std::size_t networks_per_count = 50;
  Area area{};
  double radius = 20.0;
  double delta = 2.25;
  std::size_t pairs_per_network = 50;
  /// Pairs must be at least this many radii apart; 0 disables the filter.
  double min_separation_radii = 5.0;
  std::vector<CarveDirective> carve;
  std::uint64_t seed_base = 1;
  double hagr_angle_threshold = 5.0 * std::numbers::pi / 6.0;  // radians
  double hagr_diameter_threshold = 60.0;                       // meters
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

/// Throws std::invalid_argument on empty or zero counts, delta <= 1, or
/// non-positive radius and thresholds.
void validate(const ExperimentConfig& cfg);

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

/// Seed of network `index` among those with `node_count` nodes.
std::uint64_t network_seed(std::uint64_t seed_base, std::size_t node_count, std::size_t index);

struct RouteRow {
  std::uint64_t seed;
  std::size_t node_count;
  std::string protocol;  // "gpsr" or "hddl"
  NodeId src;
  NodeId dst;
  bool delivered;
  std::size_t hops;
  double length_m;
  double straight_m;
  bool is_hole_path;
  std::optional<std::size_t> bfs_hops;
};

struct NetworkRow {
  std::uint64_t seed;
  std::size_t node_count;
  std::size_t index;
  std::size_t nodes = 0;  // after carving
  std::size_t component = 0;
  std::size_t loops = 0;
  std::size_t holes = 0;
  std::size_t hddl_evaluations = 0;
  std::size_t hagr_cost = 0;
  std::size_t probe_messages = 0;
  std::size_t announcement_messages = 0;
  std::size_t pairs = 0;
  /// Non-empty when the network was skipped.
  std::string error;
};

struct HoleDump {
  std::uint64_t seed;
  std::size_t node_count;
  HoleRecord record;
  std::size_t cached_nodes;
};

struct RunMetrics {
  std::vector<RouteRow> routes;
  std::vector<NetworkRow> networks;
  std::vector<HoleDump> holes;
};

/// One network through the full pipeline: generate, carve, detect,
/// announce, sample pairs, route each pair under both protocols.
void run_network(const ExperimentConfig& cfg, std::size_t node_count, std::size_t index,
                 RunMetrics& out);

/// Every configured network; results are ordered by (count, index)
/// regardless of thread count.
RunMetrics run_experiment(const ExperimentConfig& cfg);

/// Detected holes of a network with caches filled by announcement.
struct HoleSetup {
  DetectionPass pass;
  HoleCaches caches;
  std::size_t announcement_messages = 0;
  std::vector<std::size_t> cached_per_hole;
};

HoleSetup detect_and_announce(const Network& net, const DetectionConfig& cfg);

/// Up to `count` unordered pairs drawn without replacement from `nodes`,
/// each at least `min_separation` apart; orientation is random.
std::vector<std::pair<NodeId, NodeId>> sample_pairs(const Network& net,
                                                    const std::vector<NodeId>& nodes,
                                                    std::size_t count, double min_separation,
                                                    std::uint64_t seed);

/// Shortest hop count on the unit-disk graph; nullopt if unreachable.
std::optional<std::size_t> bfs_hops(const Network& net, NodeId src, NodeId dst);

/// Counting model of HAGR's detection work. Each node whose widest planar
/// gap exceeds the angle threshold computes angle and diameter once (2).
/// A node is positive when, in addition, the face it borders has a
/// diameter above the threshold; every positive node makes each of its
/// neighbors recompute both values (2 per neighbor).
std::size_t hagr_detection_cost(const Network& net, double angle_threshold,
                                double diameter_threshold);

/// The propagation part of the model on precomputed per-node flags.
std::size_t hagr_propagation_cost(const Network& net, const std::vector<bool>& gap_exceeds,
                                  const std::vector<bool>& positive);

/// Writes routes.csv, networks.csv, summary.csv and holes.json into
/// out_dir. Throws std::invalid_argument on an empty route set and
/// std::runtime_error when a file cannot be written.
void emit(const RunMetrics& metrics, const std::filesystem::path& out_dir);

std::string routes_csv(const RunMetrics& metrics);
std::string networks_csv(const RunMetrics& metrics);
std::string summary_csv(const RunMetrics& metrics);

/// One hole as JSON: a, b, e, f, k, L, depth, boundary.
std::string hole_record_json(const HoleRecord& rec);

}  // namespace hddl
