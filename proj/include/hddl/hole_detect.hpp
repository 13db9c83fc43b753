#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hddl/netgen.hpp"

namespace hddl {

struct DetectionConfig {
  /// Ratio threshold on probe-path length over Euclidean distance.
  double delta = 2.25;
  /// Minimum angular gap, in degrees, for a node to start probing.
  double angle_threshold = 120.0;
  /// Hops a probe may travel before it is abandoned; 0 means 2 * n.
  std::size_t probe_hop_budget = 0;
};

/// Throws std::invalid_argument unless delta > 1 and the angle is in (0, 360).
void validate(const DetectionConfig& cfg);

struct Vertex {
  NodeId id;
  Point pos;
};

enum class ProbeDirection { clockwise, counter_clockwise };

struct ProbeMessage {
  NodeId initiator;
  ProbeDirection direction;
  std::vector<Vertex> visited;
  std::size_t hop_budget;
};

/// Where a node would send its two probes.
struct Initiation {
  NodeId leftmost;
  NodeId rightmost;
  Point bisector;  // unit vector into the widest gap
  double gap_degrees;
};

/// Angular gaps are measured between consecutive planar neighbors. A node
/// initiates when it is not suppressed and its widest gap exceeds the angle
/// threshold; leftmost/rightmost come from sweeping the gap bisector. Nodes
/// with fewer than two radio neighbors never initiate.
std::optional<Initiation> should_initiate(const Network& net, NodeId node,
                                          const std::set<NodeId>& suppressed,
                                          const DetectionConfig& cfg);

/// Closed boundary walk collected by the probes.
///
/// `vertices` lists the walk in the order the counter-clockwise probe
/// visited it, starting at the initiator (an enclosed void is circled
/// clockwise in this order). ccw_prefix[i] is the walk length from the
/// initiator to vertices[i] in that order; cw_prefix[i] is the length going
/// the other way around, so cw_prefix[i] = perimeter - ccw_prefix[i] for
/// i > 0. Both are zero at the initiator.
class BoundaryLoop {
 public:
  explicit BoundaryLoop(std::vector<Vertex> vertices);

  NodeId initiator() const { return vertices_.front().id; }
  Point initiator_pos() const { return vertices_.front().pos; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<double>& ccw_prefix() const { return ccw_prefix_; }
  const std::vector<double>& cw_prefix() const { return cw_prefix_; }
  double perimeter() const { return perimeter_; }
  bool contains(NodeId v) const;

  /// Probe-path length from the initiator to v: the shorter of the two
  /// directions, taking the nearest occurrence when the walk repeats v.
  /// Throws std::invalid_argument if v is not on the loop.
  double probe_length(NodeId v) const;

  /// Shoelace area of the walk.
  double enclosed_area() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<double> ccw_prefix_;
  std::vector<double> cw_prefix_;
  double perimeter_ = 0.0;
};

struct ProbeOutcome {
  /// Nodes reached, initiator first; the final return is not repeated.
  ProbeMessage message;
  /// False when the hop budget ran out.
  bool returned = false;
};

/// Walks one probe. Each relay forwards to the first planar neighbor
/// rotating from the reversed incoming edge (counter-clockwise for the
/// counter-clockwise probe); the reversed incoming edge itself comes last,
/// so a pendant node turns the probe around.
ProbeOutcome run_probe(const Network& net, NodeId initiator, NodeId first_hop,
                       ProbeDirection direction, std::size_t hop_budget);

struct CirculationResult {
  std::optional<BoundaryLoop> loop;
  /// Every node either probe reached, initiator included.
  std::set<NodeId> heard;
  std::size_t messages = 0;
};

/// Whether some node that is not on the loop lies strictly inside the walk
/// polygon. A bounded face of the planar subgraph never encloses a node of
/// its own component; the outer face encloses all of them.
bool encloses_other_nodes(const Network& net, const BoundaryLoop& loop);

/// Sends both probes from an initiating node. The loop is present only if
/// both probes return and the walk encloses positive area but no other node.
CirculationResult circulate(const Network& net, NodeId initiator, const Initiation& init,
                            const DetectionConfig& cfg);

/// Convenience overload: evaluates should_initiate with an empty
/// suppression set first.
std::optional<BoundaryLoop> circulate(const Network& net, NodeId initiator,
                                      const DetectionConfig& cfg);

/// probe_length(v) / |initiator v|. Throws std::invalid_argument if v is the
/// initiator or not on the loop.
double hole_ratio(const BoundaryLoop& loop, NodeId v);

struct HoleEvidence {
  NodeId witness;
  double ratio;
};

/// Scans the loop in vertex order and returns the first vertex whose ratio
/// exceeds delta. `evaluations`, if given, is incremented once per ratio
/// computed.
std::optional<HoleEvidence> detect(const BoundaryLoop& loop, const DetectionConfig& cfg,
                                   std::size_t* evaluations = nullptr);

struct DetectedLoop {
  BoundaryLoop loop;
  std::optional<HoleEvidence> evidence;
};

struct DetectionPass {
  std::vector<DetectedLoop> loops;
  std::size_t ratio_evaluations = 0;
  std::size_t probe_messages = 0;
};

/// Visits candidate initiators in ascending id; every node that hears a
/// probe is suppressed from initiating afterwards.
DetectionPass run_detection(const Network& net, const DetectionConfig& cfg);

}  // namespace hddl
