// Command-line front end: generate scenarios, detect holes, route single
// packets, run experiment sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hddl/harness.hpp"

namespace {

using namespace hddl;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// "400" or "400x300".
Area parse_area(const std::string& s) {
  const auto x = s.find('x');
  Area a;
  a.width = std::stod(s.substr(0, x));
  a.height = x == std::string::npos ? a.width : std::stod(s.substr(x + 1));
  if (!(a.width > 0 && a.height > 0)) throw std::invalid_argument("area must be positive");
  return a;
}

// "cx,cy,r"
CarveDirective parse_carve(const std::string& s) {
  CarveDirective c;
  char extra;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &c.cx, &c.cy, &c.hole_radius, &extra) != 3) {
    throw std::invalid_argument("--carve expects cx,cy,r: " + s);
  }
  return c;
}

struct Common {
  std::string area = "400";
  double radius = 20.0;
  double delta = 2.25;
  std::vector<std::string> carve;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hole detection and double-landmark routing simulator"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a scenario file (final node list)");
  Common gen_c;
  std::size_t gen_nodes = 150;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--nodes", gen_nodes, "Node count before carving")->capture_default_str();
  gen->add_option("--area", gen_c.area, "WIDTH or WIDTHxHEIGHT in meters")->capture_default_str();
  gen->add_option("--radius", gen_c.radius, "Transmission range")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Deployment seed")->capture_default_str();
  gen->add_option("--carve", gen_c.carve, "Remove nodes within r of (cx,cy): cx,cy,r");
  gen->add_option("--out", gen_out, "Output file (stdout if omitted)");

  // detect
  auto* det = app.add_subcommand("detect", "Run hole detection; print one JSON line per loop");
  std::string det_in, det_out;
  double det_delta = 2.25;
  det->add_option("scenario", det_in, "Scenario file")->required();
  det->add_option("--delta", det_delta, "Ratio threshold")->capture_default_str();
  det->add_option("--out", det_out, "Output file (stdout if omitted)");

  // route
  auto* rt = app.add_subcommand("route", "Route one packet and print its trace");
  std::string rt_in, rt_protocol = "hddl";
  NodeId rt_src = 0, rt_dst = 1;
  double rt_delta = 2.25;
  rt->add_option("scenario", rt_in, "Scenario file")->required();
  rt->add_option("--src", rt_src)->required();
  rt->add_option("--dst", rt_dst)->required();
  rt->add_option("--protocol", rt_protocol)
      ->check(CLI::IsMember({"gpsr", "hddl"}))
      ->capture_default_str();
  rt->add_option("--delta", rt_delta, "Ratio threshold")->capture_default_str();

  // experiment
  auto* ex = app.add_subcommand("experiment", "Paired GPSR/HDDL sweep; writes CSV files");
  std::string ex_config, ex_out = "results";
  Common ex_c;
  std::vector<std::size_t> ex_nodes;
  std::size_t ex_seeds = 0, ex_pairs = 0, ex_threads = 0;
  std::uint64_t ex_seed_base = 0;
  double ex_sep = -1.0;
  ex->add_option("--config", ex_config, "JSON config file; flags override it");
  ex->add_option("--nodes", ex_nodes, "Node counts, e.g. 50,100,150")->delimiter(',');
  auto* ex_area = ex->add_option("--area", ex_c.area, "WIDTH or WIDTHxHEIGHT in meters");
  auto* ex_radius = ex->add_option("--radius", ex_c.radius, "Transmission range");
  auto* ex_delta = ex->add_option("--delta", ex_c.delta, "Ratio threshold");
  ex->add_option("--seeds", ex_seeds, "Networks per node count");
  ex->add_option("--pairs", ex_pairs, "Source/destination pairs per network");
  ex->add_option("--seed-base", ex_seed_base, "Base seed");
  ex->add_option("--separation", ex_sep, "Minimum pair separation in radii");
  ex->add_option("--carve", ex_c.carve, "cx,cy,r");
  ex->add_option("--threads", ex_threads, "Worker threads (0 = all cores)");
  ex->add_option("--out", ex_out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Scenario sc;
      sc.seed = gen_seed;
      sc.n = gen_nodes;
      sc.area = parse_area(gen_c.area);
      sc.radius = gen_c.radius;
      for (const auto& c : gen_c.carve) sc.carve.push_back(parse_carve(c));
      const Network net = build_network(sc);
      Scenario out = sc;
      out.carve.clear();
      out.n = net.size();
      out.nodes.assign(net.positions().begin(), net.positions().end());
      write_or_print(gen_out, scenario_to_json(out) + "\n");
    } else if (*det) {
      const Network net = build_network(scenario_from_json(read_file(det_in)));
      DetectionConfig cfg;
      cfg.delta = det_delta;
      const HoleSetup setup = detect_and_announce(net, cfg);
      std::string text;
      std::size_t hole = 0;
      for (const auto& found : setup.pass.loops) {
        std::string line = "{\"initiator\":" + std::to_string(found.loop.initiator()) +
                           ",\"vertices\":" + std::to_string(found.loop.vertices().size());
        if (found.evidence) {
          line += ",\"witness\":" + std::to_string(found.evidence->witness) +
                  ",\"ratio\":" + std::to_string(found.evidence->ratio) +
                  ",\"cached_nodes\":" + std::to_string(setup.cached_per_hole[hole]) +
                  ",\"hole\":" + hole_record_json(setup.caches.holes[hole]);
          ++hole;
        }
        text += line + "}\n";
      }
      write_or_print(det_out, text);
      std::cerr << setup.pass.loops.size() << " loops, " << hole << " holes, "
                << setup.pass.ratio_evaluations << " ratio evaluations\n";
    } else if (*rt) {
      const Network net = build_network(scenario_from_json(read_file(rt_in)));
      if (rt_src >= net.size() || rt_dst >= net.size() || rt_src == rt_dst) {
        throw std::invalid_argument("src and dst must be distinct node ids below " +
                                    std::to_string(net.size()));
      }
      Path path;
      if (rt_protocol == "gpsr") {
        path = route_gpsr(net, rt_src, rt_dst, default_ttl(net));
      } else {
        DetectionConfig cfg;
        cfg.delta = rt_delta;
        const HoleSetup setup = detect_and_announce(net, cfg);
        path = route_hddl(net, setup.caches, rt_src, rt_dst, default_ttl(net)).path;
      }
      for (std::size_t i = 0; i < path.hops.size(); ++i) {
        const Point p = net.position(path.hops[i]);
        std::printf("%zu %u %.6f %.6f %s\n", i, path.hops[i], p.x, p.y,
                    i == 0 ? "source" : to_string(path.modes[i - 1]));
      }
      std::printf("delivered=%d hops=%zu length=%.6f\n", path.delivered ? 1 : 0,
                  path.hop_count(), path.euclidean_length);
      return path.delivered ? 0 : 2;
    } else if (*ex) {
      ExperimentConfig cfg =
          ex_config.empty() ? ExperimentConfig{} : config_from_json(read_file(ex_config));
      if (!ex_nodes.empty()) cfg.node_counts = ex_nodes;
      if (*ex_area) cfg.area = parse_area(ex_c.area);
      if (*ex_radius) cfg.radius = ex_c.radius;
      if (*ex_delta) cfg.delta = ex_c.delta;
      if (ex_seeds) cfg.networks_per_count = ex_seeds;
      if (ex_pairs) cfg.pairs_per_network = ex_pairs;
      if (ex_seed_base) cfg.seed_base = ex_seed_base;
      if (ex_sep >= 0.0) cfg.min_separation_radii = ex_sep;
      if (ex_threads) cfg.threads = ex_threads;
      if (!ex_c.carve.empty()) {
        cfg.carve.clear();
        for (const auto& c : ex_c.carve) cfg.carve.push_back(parse_carve(c));
      }
      const RunMetrics metrics = run_experiment(cfg);
      emit(metrics, ex_out);
      std::cout << summary_csv(metrics);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
