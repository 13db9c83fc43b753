#include "hddl/hole_model.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hddl {

namespace {

// Distinct vertices in first-visit order.
std::vector<Vertex> distinct_vertices(const BoundaryLoop& loop) {
  std::set<NodeId> seen;
  std::vector<Vertex> out;
  for (const auto& v : loop.vertices()) {
    if (seen.insert(v.id).second) out.push_back(v);
  }
  return out;
}

bool pair_less(NodeId a0, NodeId b0, NodeId a1, NodeId b1) {
  return std::pair{std::min(a0, b0), std::max(a0, b0)} <
         std::pair{std::min(a1, b1), std::max(a1, b1)};
}

}  // namespace

RepresentativeSegment representative_segment(const BoundaryLoop& loop) {
  const auto verts = distinct_vertices(loop);
  if (verts.size() < 2) throw std::invalid_argument("representative_segment: need two vertices");
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const double d = distance(verts[i].pos, verts[j].pos);
      if (d > best || (d == best && pair_less(verts[i].id, verts[j].id, verts[bi].id,
                                              verts[bj].id))) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  Vertex a = verts[bi], b = verts[bj];
  if (b.id < a.id) std::swap(a, b);

  Side side = side_of_line(Segment{a.pos, b.pos}, loop.initiator_pos());
  if (side == Side::on) {
    for (const auto& v : loop.vertices()) {
      side = side_of_line(Segment{a.pos, b.pos}, v.pos);
      if (side != Side::on) break;
    }
  }
  if (side == Side::left) std::swap(a, b);
  return RepresentativeSegment{a, b, Side::right};
}

EdgePair select_ef(const BoundaryLoop& loop, const RepresentativeSegment& seg,
                   const DetectionConfig& cfg) {
  const Segment ab{seg.a.pos, seg.b.pos};
  std::vector<Vertex> candidates;
  bool any_near = false;
  for (const auto& v : distinct_vertices(loop)) {
    const bool near = side_of_line(ab, v.pos) == seg.near_side;
    any_near = any_near || near;
    if (near || v.id == loop.initiator()) candidates.push_back(v);
  }
  if (!any_near) throw std::invalid_argument("select_ef: no vertex on the initiator's side");

  auto order = [&](Vertex u, Vertex v) {
    const Point dir = seg.b.pos - seg.a.pos;
    if (dot(v.pos - seg.a.pos, dir) < dot(u.pos - seg.a.pos, dir)) std::swap(u, v);
    return EdgePair{u, v};
  };
  if (candidates.size() < 2) return order(seg.a, seg.b);

  std::vector<bool> qualifies(candidates.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].id != loop.initiator()) {
      qualifies[i] = hole_ratio(loop, candidates[i].id) > cfg.delta;
    }
  }

  auto best_pair = [&](bool require_qualified) -> std::optional<EdgePair> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    double best_d = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (require_qualified && !qualifies[i] && !qualifies[j]) continue;
        const double d = distance(candidates[i].pos, candidates[j].pos);
        if (d > best_d ||
            (d == best_d && pair_less(candidates[i].id, candidates[j].id,
                                      candidates[best->first].id, candidates[best->second].id))) {
          best_d = d;
          best = {i, j};
        }
      }
    }
    if (!best) return std::nullopt;
    return order(candidates[best->first], candidates[best->second]);
  };
  if (auto pair = best_pair(true)) return *pair;
  return *best_pair(false);
}

double announcement_depth(double segment_length) {
  if (!(segment_length > 0.0)) throw std::invalid_argument("announcement_depth: L must be positive");
  return 0.87 * segment_length;
}

HoleRecord build_record(const BoundaryLoop& loop, const DetectionConfig& cfg) {
  const RepresentativeSegment seg = representative_segment(loop);
  const EdgePair ef = select_ef(loop, seg, cfg);
  if (ef.e.pos == ef.f.pos) throw std::invalid_argument("build_record: e and f coincide");

  const double length = distance(seg.a.pos, seg.b.pos);
  const double depth = announcement_depth(length);

  // Near side is to the right of a->b.
  const Point ab = seg.b.pos - seg.a.pos;
  const Point near_normal = (1.0 / norm(ab)) * Point{ab.y, -ab.x};
  const Point ef_dir = ef.f.pos - ef.e.pos;
  Point normal = (1.0 / norm(ef_dir)) * Point{-ef_dir.y, ef_dir.x};
  const double along = dot(normal, near_normal);
  const Point c = midpoint(ef.e.pos, ef.f.pos);
  if (along < 0.0 ||
      (std::abs(along) < 1e-12 && dot(normal, c - midpoint(seg.a.pos, seg.b.pos)) < 0.0)) {
    normal = -1.0 * normal;
  }
  const Point k = c + depth * normal;

  return HoleRecord{seg.a,
                    seg.b,
                    ef.e,
                    ef.f,
                    loop,
                    ShadedRegion{seg.a.pos, seg.b.pos, opposite(seg.near_side)},
                    AnnouncementTriangle{ef.e.pos, ef.f.pos, k},
                    length,
                    depth};
}

std::vector<NodeId> announcement_seeds(const HoleRecord& rec) {
  const auto& verts = rec.boundary.vertices();
  const std::size_t n = verts.size();
  auto index_of = [&](NodeId id) {
    for (std::size_t i = 0; i < n; ++i) {
      if (verts[i].id == id) return i;
    }
    throw std::invalid_argument("announcement_seeds: endpoint not on boundary");
  };
  const std::size_t ie = index_of(rec.e.id);
  const std::size_t jf = index_of(rec.f.id);
  const Segment ab{rec.a.pos, rec.b.pos};

  auto walk = [&](bool forward) {
    std::vector<NodeId> ids;
    std::size_t far = 0;
    for (std::size_t i = ie;; i = forward ? (i + 1) % n : (i + n - 1) % n) {
      ids.push_back(verts[i].id);
      if (side_of_line(ab, verts[i].pos) == rec.shaded.far_side) ++far;
      if (i == jf) break;
    }
    return std::pair{far, ids};
  };
  auto [far_fwd, fwd] = walk(true);
  auto [far_bwd, bwd] = walk(false);
  const bool take_fwd =
      far_fwd < far_bwd || (far_fwd == far_bwd && fwd.size() <= bwd.size());
  std::vector<NodeId> seeds = take_fwd ? fwd : bwd;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

Announcement announce(const Network& net, const HoleRecord& rec) {
  Announcement out;
  std::vector<bool> stored(net.size(), false);
  std::deque<NodeId> queue;

  auto store_and_forward = [&](NodeId u) {
    stored[u] = true;
    out.messages += net.neighbors(u).size();
    for (NodeId v : net.neighbors(u)) queue.push_back(v);
  };
  for (NodeId s : announcement_seeds(rec)) {
    if (!stored[s]) store_and_forward(s);
  }
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (stored[u]) continue;  // duplicate
    if (!rec.triangle.contains(net.position(u))) continue;
    store_and_forward(u);
  }
  for (NodeId u = 0; u < net.size(); ++u) {
    if (stored[u]) out.cached.push_back(u);
  }
  return out;
}

double alpha_objective(double l, double h, double alpha) {
  const double t = std::tan(alpha);
  const double detour = (h - l * t) + l / std::cos(alpha);
  return l * l * t * detour * detour;
}

namespace {

double golden_min(double h, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = alpha_objective(1.0, h, x1);
  double f2 = alpha_objective(1.0, h, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = alpha_objective(1.0, h, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = alpha_objective(1.0, h, x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

AlphaSearch optimize_alpha(std::span<const double> h_multiples, double grid_step) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (!(grid_step > 0.0 && grid_step < kHalfPi / 4.0)) {
    throw std::invalid_argument("optimize_alpha: bad grid step");
  }
  const auto cells = static_cast<std::size_t>(kHalfPi / grid_step);
  AlphaSearch out;
  for (double hm : h_multiples) {
    if (!(hm > 1.0)) throw std::invalid_argument("optimize_alpha: h multiple must exceed 1");
    // Interior grid points only: alpha = i * step, 0 < alpha < pi/2.
    std::size_t best_i = 1;
    double best = alpha_objective(1.0, hm, grid_step);
    bool sign_change = false;
    double prev_slope = 0.0;
    for (std::size_t i = 1; i < cells; ++i) {
      const double a = static_cast<double>(i) * grid_step;
      if (a >= kHalfPi) break;
      const double g = alpha_objective(1.0, hm, a);
      if (g < best) {
        best = g;
        best_i = i;
      }
      const double h = 1e-3 * grid_step;
      const double slope =
          (alpha_objective(1.0, hm, a + h) - alpha_objective(1.0, hm, a - h)) / (2.0 * h);
      if (i > 1 && ((slope > 0.0) != (prev_slope > 0.0))) sign_change = true;
      prev_slope = slope;
    }
    const double lo = static_cast<double>(best_i - 1) * grid_step;
    const double hi = std::min(static_cast<double>(best_i + 1) * grid_step, kHalfPi);
    double alpha = golden_min(hm, lo, hi);
    if (!(alpha > 0.0)) alpha = std::nextafter(0.0, 1.0);
    out.per_h.push_back(AlphaOptimum{hm, alpha, alpha_objective(1.0, hm, alpha), sign_change});
  }
  double sum = 0.0;
  for (const auto& o : out.per_h) sum += o.alpha;
  out.mean_alpha = out.per_h.empty() ? 0.0 : sum / static_cast<double>(out.per_h.size());
  return out;
}

}  // namespace hddl
