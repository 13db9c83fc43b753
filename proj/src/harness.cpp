#include "hddl/harness.hpp"

#include <atomic>
#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hddl/gpsr.hpp"
#include "hddl/rng.hpp"

namespace hddl {

using nlohmann::json;

void validate(const ExperimentConfig& cfg) {
  if (cfg.node_counts.empty()) throw std::invalid_argument("config: node_counts is empty");
  for (std::size_t n : cfg.node_counts) {
    if (n < 2) throw std::invalid_argument("config: node counts must be at least 2");
  }
  if (cfg.networks_per_count == 0) throw std::invalid_argument("config: networks_per_count is 0");
  if (cfg.pairs_per_network == 0) throw std::invalid_argument("config: pairs_per_network is 0");
  if (!(cfg.delta > 1.0)) throw std::invalid_argument("config: delta must exceed 1");
  if (!(cfg.radius > 0.0)) throw std::invalid_argument("config: radius must be positive");
  if (!(cfg.area.width > 0.0 && cfg.area.height > 0.0)) {
    throw std::invalid_argument("config: area must be positive");
  }
  if (!(cfg.hagr_angle_threshold > 0.0 && cfg.hagr_diameter_threshold > 0.0)) {
    throw std::invalid_argument("config: HAGR thresholds must be positive");
  }
  if (cfg.min_separation_radii < 0.0) throw std::invalid_argument("config: negative separation");
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["node_counts"] = cfg.node_counts;
  j["networks_per_count"] = cfg.networks_per_count;
  j["area_width"] = cfg.area.width;
  j["area_height"] = cfg.area.height;
  j["radius"] = cfg.radius;
  j["delta"] = cfg.delta;
  j["pairs_per_network"] = cfg.pairs_per_network;
  j["min_separation_radii"] = cfg.min_separation_radii;
  j["seed_base"] = cfg.seed_base;
  j["hagr_angle_threshold"] = cfg.hagr_angle_threshold;
  j["hagr_diameter_threshold"] = cfg.hagr_diameter_threshold;
  j["threads"] = cfg.threads;
  j["carve"] = json::array();
  for (const auto& c : cfg.carve) {
    j["carve"].push_back({{"cx", c.cx}, {"cy", c.cy}, {"hole_radius", c.hole_radius}});
  }
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig cfg;
  cfg.node_counts = j.value("node_counts", cfg.node_counts);
  cfg.networks_per_count = j.value("networks_per_count", cfg.networks_per_count);
  cfg.area.width = j.value("area_width", cfg.area.width);
  cfg.area.height = j.value("area_height", cfg.area.height);
  cfg.radius = j.value("radius", cfg.radius);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.pairs_per_network = j.value("pairs_per_network", cfg.pairs_per_network);
  cfg.min_separation_radii = j.value("min_separation_radii", cfg.min_separation_radii);
  cfg.seed_base = j.value("seed_base", cfg.seed_base);
  cfg.hagr_angle_threshold = j.value("hagr_angle_threshold", cfg.hagr_angle_threshold);
  cfg.hagr_diameter_threshold = j.value("hagr_diameter_threshold", cfg.hagr_diameter_threshold);
  cfg.threads = j.value("threads", cfg.threads);
  if (j.contains("carve")) {
    for (const auto& c : j.at("carve")) {
      cfg.carve.push_back({c.at("cx").get<double>(), c.at("cy").get<double>(),
                           c.at("hole_radius").get<double>()});
    }
  }
  validate(cfg);
  return cfg;
}

std::uint64_t network_seed(std::uint64_t seed_base, std::size_t node_count, std::size_t index) {
  return seed_base ^ rng::mix(node_count, index);
}

std::optional<std::size_t> bfs_hops(const Network& net, NodeId src, NodeId dst) {
  if (src == dst) return 0;
  std::vector<std::size_t> dist(net.size(), SIZE_MAX);
  std::deque<NodeId> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : net.neighbors(u)) {
      if (dist[v] != SIZE_MAX) continue;
      dist[v] = dist[u] + 1;
      if (v == dst) return dist[v];
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

std::size_t hagr_propagation_cost(const Network& net, const std::vector<bool>& gap_exceeds,
                                  const std::vector<bool>& positive) {
  std::size_t cost = 0;
  for (NodeId u = 0; u < net.size(); ++u) {
    if (gap_exceeds[u]) cost += 2;
  }
  // Positive nodes trigger their neighbors; a neighbor that is itself
  // positive triggers in turn. Each node triggers at most once.
  std::vector<bool> triggered(net.size(), false);
  std::deque<NodeId> queue;
  for (NodeId u = 0; u < net.size(); ++u) {
    if (positive[u]) queue.push_back(u);
  }
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (triggered[u]) continue;
    triggered[u] = true;
    cost += 2 * net.neighbors(u).size();
    for (NodeId v : net.neighbors(u)) {
      if (positive[v] && !triggered[v]) queue.push_back(v);
    }
  }
  return cost;
}

std::size_t hagr_detection_cost(const Network& net, double angle_threshold,
                                double diameter_threshold) {
  if (!(angle_threshold > 0.0 && diameter_threshold > 0.0)) {
    throw std::invalid_argument("hagr_detection_cost: thresholds must be positive");
  }
  DetectionConfig cfg;
  cfg.angle_threshold = angle_threshold * 180.0 / std::numbers::pi;
  std::vector<bool> gap(net.size(), false), positive(net.size(), false);
  for (NodeId u = 0; u < net.size(); ++u) {
    const auto init = should_initiate(net, u, {}, cfg);
    if (!init) continue;
    gap[u] = true;
    const auto probe = run_probe(net, u, init->leftmost, ProbeDirection::counter_clockwise,
                                 2 * net.size());
    const auto& pts = probe.message.visited;
    double diameter = 0.0;
    for (std::size_t i = 0; i < pts.size() && diameter <= diameter_threshold; ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        diameter = std::max(diameter, distance(pts[i].pos, pts[j].pos));
      }
    }
    positive[u] = diameter > diameter_threshold;
  }
  return hagr_propagation_cost(net, gap, positive);
}

HoleSetup detect_and_announce(const Network& net, const DetectionConfig& cfg) {
  HoleSetup setup{run_detection(net, cfg), HoleCaches(net.size()), 0, {}};
  for (const auto& found : setup.pass.loops) {
    if (!found.evidence) continue;
    HoleRecord rec = build_record(found.loop, cfg);
    const Announcement ann = announce(net, rec);
    const std::size_t index = setup.caches.holes.size();
    setup.caches.holes.push_back(std::move(rec));
    for (NodeId u : ann.cached) setup.caches.entries[u].push_back(index);
    setup.announcement_messages += ann.messages;
    setup.cached_per_hole.push_back(ann.cached.size());
  }
  return setup;
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(const Network& net,
                                                    const std::vector<NodeId>& nodes,
                                                    std::size_t count, double min_separation,
                                                    std::uint64_t seed) {
  std::vector<std::pair<NodeId, NodeId>> pool;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (distance(net.position(nodes[i]), net.position(nodes[j])) >= min_separation) {
        pool.emplace_back(nodes[i], nodes[j]);
      }
    }
  }
  auto eng = rng::make_stream(seed, rng::Stream::pairs);
  const std::size_t take = std::min(count, pool.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng::uniform_index(eng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    if (rng::uniform_index(eng, 2) == 1) std::swap(pool[i].first, pool[i].second);
  }
  pool.resize(take);
  return pool;
}

void run_network(const ExperimentConfig& cfg, std::size_t node_count, std::size_t index,
                 RunMetrics& out) {
  const std::uint64_t seed = network_seed(cfg.seed_base, node_count, index);
  NetworkRow row{};
  row.seed = seed;
  row.node_count = node_count;
  row.index = index;
  try {
    Scenario sc;
    sc.seed = seed;
    sc.n = node_count;
    sc.area = cfg.area;
    sc.radius = cfg.radius;
    sc.carve = cfg.carve;
    const Network net = build_network(sc);
    row.nodes = net.size();

    DetectionConfig dcfg;
    dcfg.delta = cfg.delta;
    const HoleSetup setup = detect_and_announce(net, dcfg);
    row.loops = setup.pass.loops.size();
    row.holes = setup.caches.holes.size();
    row.hddl_evaluations = setup.pass.ratio_evaluations;
    row.probe_messages = setup.pass.probe_messages;
    row.announcement_messages = setup.announcement_messages;
    row.hagr_cost = hagr_detection_cost(net, cfg.hagr_angle_threshold,
                                        cfg.hagr_diameter_threshold);

    const auto component = largest_component(net);
    row.component = component.size();
    const auto pairs = sample_pairs(net, component, cfg.pairs_per_network,
                                    cfg.min_separation_radii * cfg.radius, seed);
    row.pairs = pairs.size();

    const std::size_t ttl = default_ttl(net);
    std::vector<RouteRow> routes;
    for (const auto& [s, d] : pairs) {
      const auto bfs = bfs_hops(net, s, d);
      const double straight = distance(net.position(s), net.position(d));
      const Path g = route_gpsr(net, s, d, ttl);
      const HddlPath h = route_hddl(net, setup.caches, s, d, ttl);
      routes.push_back(RouteRow{seed, node_count, "gpsr", s, d, g.delivered, g.hop_count(),
                                g.euclidean_length, straight, h.used_hole(), bfs});
      routes.push_back(RouteRow{seed, node_count, "hddl", s, d, h.path.delivered,
                                h.path.hop_count(), h.path.euclidean_length, straight,
                                h.used_hole(), bfs});
    }
    out.routes.insert(out.routes.end(), routes.begin(), routes.end());
    for (std::size_t i = 0; i < setup.caches.holes.size(); ++i) {
      out.holes.push_back(
          HoleDump{seed, node_count, setup.caches.holes[i], setup.cached_per_hole[i]});
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    std::cerr << "skipping network n=" << node_count << " index=" << index << ": " << e.what()
              << '\n';
  }
  out.networks.push_back(std::move(row));
}

RunMetrics run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t n : cfg.node_counts) {
    for (std::size_t i = 0; i < cfg.networks_per_count; ++i) jobs.emplace_back(n, i);
  }
  std::vector<RunMetrics> parts(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      run_network(cfg, jobs[j].first, jobs[j].second, parts[j]);
    }
  };
  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, jobs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  RunMetrics all;
  for (auto& p : parts) {
    all.routes.insert(all.routes.end(), p.routes.begin(), p.routes.end());
    all.networks.insert(all.networks.end(), p.networks.begin(), p.networks.end());
    for (auto& h : p.holes) all.holes.push_back(std::move(h));
  }
  return all;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

json vertex_json(const Vertex& v) { return {{"id", v.id}, {"x", v.pos.x}, {"y", v.pos.y}}; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string routes_csv(const RunMetrics& metrics) {
  std::string out =
      "seed,node_count,protocol,src,dst,delivered,hops,length_m,straight_m,is_hole_path,"
      "bfs_hops\n";
  for (const auto& r : metrics.routes) {
    out += std::to_string(r.seed) + ',' + std::to_string(r.node_count) + ',' + r.protocol +
           ',' + std::to_string(r.src) + ',' + std::to_string(r.dst) + ',' +
           (r.delivered ? "1" : "0") + ',' + std::to_string(r.hops) + ',' +
           fmt("%.6f", r.length_m) + ',' + fmt("%.6f", r.straight_m) + ',' +
           (r.is_hole_path ? "1" : "0") + ',' +
           (r.bfs_hops ? std::to_string(*r.bfs_hops) : std::string("unreachable")) + '\n';
  }
  return out;
}

std::string networks_csv(const RunMetrics& metrics) {
  std::string out =
      "seed,node_count,index,nodes,component,loops,holes,hddl_evaluations,hagr_cost,"
      "probe_messages,announcement_messages,pairs,error\n";
  for (const auto& n : metrics.networks) {
    out += std::to_string(n.seed) + ',' + std::to_string(n.node_count) + ',' +
           std::to_string(n.index) + ',' + std::to_string(n.nodes) + ',' +
           std::to_string(n.component) + ',' + std::to_string(n.loops) + ',' +
           std::to_string(n.holes) + ',' + std::to_string(n.hddl_evaluations) + ',' +
           std::to_string(n.hagr_cost) + ',' + std::to_string(n.probe_messages) + ',' +
           std::to_string(n.announcement_messages) + ',' + std::to_string(n.pairs) + ",\"" +
           n.error + "\"\n";
  }
  return out;
}

std::string summary_csv(const RunMetrics& metrics) {
  struct Acc {
    std::size_t routes = 0, delivered = 0, paired = 0, hole_paths = 0;
    double length = 0, hops = 0, hole_length = 0, hole_hops = 0;
  };
  struct NetAcc {
    std::size_t networks = 0;
    double holes = 0, hddl = 0, hagr = 0;
  };
  std::map<std::pair<std::size_t, std::string>, Acc> acc;
  std::map<std::size_t, NetAcc> nets;
  for (const auto& n : metrics.networks) {
    acc[{n.node_count, "gpsr"}];
    acc[{n.node_count, "hddl"}];
    auto& a = nets[n.node_count];
    if (!n.error.empty()) continue;
    ++a.networks;
    a.holes += static_cast<double>(n.holes);
    a.hddl += static_cast<double>(n.hddl_evaluations);
    a.hagr += static_cast<double>(n.hagr_cost);
  }
  // Rows come in (gpsr, hddl) pairs for the same (seed, src, dst); means are
  // over pairs both protocols delivered.
  const auto& r = metrics.routes;
  for (std::size_t i = 0; i + 1 < r.size(); i += 2) {
    const RouteRow* rows[2] = {&r[i], &r[i + 1]};
    const bool both = rows[0]->delivered && rows[1]->delivered;
    for (const RouteRow* row : rows) {
      Acc& a = acc[{row->node_count, row->protocol}];
      ++a.routes;
      if (row->delivered) ++a.delivered;
      if (!both) continue;
      ++a.paired;
      a.length += row->length_m;
      a.hops += static_cast<double>(row->hops);
      if (row->is_hole_path) {
        ++a.hole_paths;
        a.hole_length += row->length_m;
        a.hole_hops += static_cast<double>(row->hops);
      }
    }
  }
  auto mean = [](double sum, std::size_t n) { return n ? sum / static_cast<double>(n) : 0.0; };
  std::string out =
      "node_count,protocol,routes,delivery_rate,mean_length_m,mean_hops,hole_paths,"
      "hole_mean_length_m,hole_mean_hops,networks,mean_holes,mean_hddl_evaluations,"
      "mean_hagr_cost\n";
  for (const auto& [key, a] : acc) {
    const NetAcc& n = nets[key.first];
    out += std::to_string(key.first) + ',' + key.second + ',' + std::to_string(a.routes) + ',' +
           fmt("%.6f", mean(static_cast<double>(a.delivered), a.routes)) + ',' +
           fmt("%.6f", mean(a.length, a.paired)) + ',' + fmt("%.6f", mean(a.hops, a.paired)) +
           ',' + std::to_string(a.hole_paths) + ',' +
           fmt("%.6f", mean(a.hole_length, a.hole_paths)) + ',' +
           fmt("%.6f", mean(a.hole_hops, a.hole_paths)) + ',' + std::to_string(n.networks) +
           ',' + fmt("%.6f", mean(n.holes, n.networks)) + ',' +
           fmt("%.6f", mean(n.hddl, n.networks)) + ',' + fmt("%.6f", mean(n.hagr, n.networks)) +
           '\n';
  }
  return out;
}

std::string hole_record_json(const HoleRecord& rec) {
  json j;
  j["a"] = vertex_json(rec.a);
  j["b"] = vertex_json(rec.b);
  j["e"] = vertex_json(rec.e);
  j["f"] = vertex_json(rec.f);
  j["k"] = {{"x", rec.triangle.k.x}, {"y", rec.triangle.k.y}};
  j["L"] = rec.length;
  j["depth"] = rec.depth;
  j["boundary"] = json::array();
  for (const auto& v : rec.boundary.vertices()) j["boundary"].push_back(vertex_json(v));
  return j.dump();
}

void emit(const RunMetrics& metrics, const std::filesystem::path& out_dir) {
  if (metrics.routes.empty()) throw std::invalid_argument("emit: no routes to write");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "routes.csv", routes_csv(metrics));
  write_file(out_dir / "networks.csv", networks_csv(metrics));
  write_file(out_dir / "summary.csv", summary_csv(metrics));
  std::string holes = "[\n";
  for (std::size_t i = 0; i < metrics.holes.size(); ++i) {
    const auto& h = metrics.holes[i];
    holes += "{\"seed\":" + std::to_string(h.seed) +
             ",\"node_count\":" + std::to_string(h.node_count) +
             ",\"cached_nodes\":" + std::to_string(h.cached_nodes) +
             ",\"hole\":" + hole_record_json(h.record) + "}" +
             (i + 1 < metrics.holes.size() ? ",\n" : "\n");
  }
  holes += "]\n";
  write_file(out_dir / "holes.json", holes);
}

}  // namespace hddl
