#include <stdexcept>

#include "hddl/netgen.hpp"
#include "json.hpp"

using json = nlohmann::json;

namespace hddl {

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["seed"] = s.seed;
  j["n"] = s.nodes.empty() ? s.n : s.nodes.size();
  j["area_width"] = s.area.width;
  j["area_height"] = s.area.height;
  j["radius"] = s.radius;
  if (!s.nodes.empty()) {
    json nodes = json::array();
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      nodes.push_back({{"id", i}, {"x", s.nodes[i].x}, {"y", s.nodes[i].y}});
    }
    j["nodes"] = std::move(nodes);
  }
  if (!s.carve.empty()) {
    json carve = json::array();
    for (const auto& c : s.carve) {
      carve.push_back({{"cx", c.cx}, {"cy", c.cy}, {"hole_radius", c.hole_radius}});
    }
    j["carve"] = std::move(carve);
  }
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  const json j = json::parse(text);
  Scenario s;
  s.seed = j.value("seed", s.seed);
  s.n = j.value("n", s.n);
  s.area.width = j.value("area_width", s.area.width);
  s.area.height = j.value("area_height", s.area.height);
  s.radius = j.value("radius", s.radius);
  if (j.contains("nodes")) {
    const auto& nodes = j.at("nodes");
    s.nodes.assign(nodes.size(), Point{});
    std::vector<bool> seen(nodes.size(), false);
    for (const auto& node : nodes) {
      const auto id = node.at("id").get<std::size_t>();
      if (id >= nodes.size() || seen[id]) {
        throw std::invalid_argument("scenario: node ids must be dense and unique");
      }
      seen[id] = true;
      s.nodes[id] = Point{node.at("x").get<double>(), node.at("y").get<double>()};
    }
    s.n = s.nodes.size();
  }
  if (j.contains("carve")) {
    for (const auto& c : j.at("carve")) {
      s.carve.push_back(CarveDirective{c.at("cx").get<double>(), c.at("cy").get<double>(),
                                       c.at("hole_radius").get<double>()});
    }
  }
  return s;
}

}  // namespace hddl
