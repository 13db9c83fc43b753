#pragma once

#include <span>
#include <vector>

#include "hddl/geometry.hpp"
#include "hddl/hole_detect.hpp"
#include "hddl/netgen.hpp"

namespace hddl {

/// The hole's blocking segment. a and b are oriented so that the loop's
/// initiator side ("near side") is to the right of a->b.
struct RepresentativeSegment {
  Vertex a;
  Vertex b;
  Side near_side = Side::right;
};

/// Most distant pair of loop vertices; ties go to the lexicographically
/// smallest (min id, max id). When the initiator is collinear with ab the
/// near side is taken from the first off-line vertex in walk order.
RepresentativeSegment representative_segment(const BoundaryLoop& loop);

struct EdgePair {
  Vertex e;
  Vertex f;
};

/// Announcement base: the most separated pair among near-side vertices (the
/// initiator included) in which at least one member's hole ratio exceeds
/// delta. With no qualifying pair, the most separated near-side pair; with
/// fewer than two candidates, (a, b). e is the member whose projection on
/// a->b comes first. Throws std::invalid_argument if no vertex lies strictly
/// on the near side.
EdgePair select_ef(const BoundaryLoop& loop, const RepresentativeSegment& seg,
                   const DetectionConfig& cfg);

/// Announcement-triangle depth for a segment of length L.
double announcement_depth(double segment_length);

struct HoleRecord {
  Vertex a;
  Vertex b;
  Vertex e;
  Vertex f;
  BoundaryLoop boundary;
  ShadedRegion shaded;
  AnnouncementTriangle triangle;
  double length;  // |ab|
  double depth;
};

/// Composes segment, shaded region (far side of ab), e/f, and the triangle
/// with apex k = midpoint(ef) + depth * (unit normal of ef toward the near
/// side). Throws std::invalid_argument when e and f coincide.
HoleRecord build_record(const BoundaryLoop& loop, const DetectionConfig& cfg);

/// Boundary vertices along the near-side path from e to f, inclusive.
std::vector<NodeId> announcement_seeds(const HoleRecord& rec);

struct Announcement {
  /// Nodes that stored the record, ascending.
  std::vector<NodeId> cached;
  /// One message per neighbor reached by each forward.
  std::size_t messages = 0;
};

/// Constrained flood from the seeds. Seeds and triangle nodes store the
/// record and forward once; anything else drops it.
Announcement announce(const Network& net, const HoleRecord& rec);

/// Hole records and which nodes hold them.
struct HoleCaches {
  std::vector<HoleRecord> holes;
  /// Per node, indices into holes.
  std::vector<std::vector<std::size_t>> entries;

  explicit HoleCaches(std::size_t nodes = 0) : entries(nodes) {}
  bool empty() const { return holes.empty(); }
};

// --- announcement-depth objective ---------------------------------------

/// Triangle area times squared detour length:
/// g(alpha) = l^2 tan(alpha) * ((h - l tan(alpha)) + l / cos(alpha))^2.
double alpha_objective(double l, double h, double alpha);

struct AlphaOptimum {
  double h_multiple;
  double alpha;
  double value;
  /// Whether the numerical derivative changes sign inside (0, pi/2).
  bool has_stationary_point;
};

struct AlphaSearch {
  std::vector<AlphaOptimum> per_h;
  double mean_alpha = 0.0;
};

/// Minimizes g over the open interval (0, pi/2) for each h = multiple * l
/// (l = 1) by grid search with step `grid_step`, then golden-section
/// refinement within the neighboring grid cells.
AlphaSearch optimize_alpha(std::span<const double> h_multiples, double grid_step);

}  // namespace hddl
