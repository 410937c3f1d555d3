#include "wsntopo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

template <class F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const DeploymentConfig& config) {
  Json j;
  j["n"] = config.n;
  j["side"] = config.side;
  j["r"] = config.range;
  j["sink_position"] = Json::array({config.sink_position.x, config.sink_position.y});
  return j;
}

DeploymentConfig deployment_config_from_json(const Json& j) {
  return guarded("deployment config", [&] {
    DeploymentConfig c;
    for (const auto& [key, value] : j.items()) {
      if (key == "n") {
        c.n = value.get<std::size_t>();
      } else if (key == "side") {
        c.side = value.get<double>();
      } else if (key == "r") {
        c.range = value.get<double>();
      } else if (key == "sink_position") {
        c.sink_position = {value.at(0).get<double>(), value.at(1).get<double>()};
      } else {
        throw ConfigError("unknown deployment key '" + key + "'");
      }
    }
    return c;
  });
}

Json to_json(const Deployment& deployment) {
  Json positions = Json::array();
  for (const Point& p : deployment.positions()) positions.push_back(Json::array({p.x, p.y}));
  Json j;
  j["config"] = to_json(deployment.config());
  j["positions"] = std::move(positions);
  j["energies"] = deployment.energies();
  j["sink"] = deployment.sink();
  return j;
}

Deployment deployment_from_json(const Json& j) {
  return guarded("deployment", [&] {
    std::vector<Point> positions;
    for (const auto& p : j.at("positions")) {
      positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return Deployment(deployment_config_from_json(j.at("config")), std::move(positions),
                      j.at("energies").get<std::vector<double>>(),
                      j.value("sink", NodeId{0}));
  });
}

std::string_view energy_weight_name(EnergyWeight kind) {
  switch (kind) {
    case EnergyWeight::kIdentity:
      return "identity";
    case EnergyWeight::kSqrt:
      return "sqrt";
    case EnergyWeight::kSquare:
      return "square";
  }
  return "identity";
}

EnergyWeight parse_energy_weight(std::string_view name) {
  if (name == "identity") return EnergyWeight::kIdentity;
  if (name == "sqrt") return EnergyWeight::kSqrt;
  if (name == "square") return EnergyWeight::kSquare;
  throw ConfigError("unknown energy weight '" + std::string(name) +
                    "' (expected identity, sqrt or square)");
}

Json to_json(const LaeeParams& params) {
  Json j;
  j["m0"] = params.m0;
  j["e0"] = params.e0;
  j["m"] = params.m;
  j["k_max"] = params.k_max;
  j["f"] = std::string(energy_weight_name(params.f_kind));
  return j;
}

LaeeParams laee_params_from_json(const Json& j, LaeeParams p) {
  return guarded("laee params", [&] {
    for (const auto& [key, value] : j.items()) {
      if (key == "m0") {
        p.m0 = value.get<std::size_t>();
      } else if (key == "e0") {
        p.e0 = value.get<std::size_t>();
      } else if (key == "m") {
        p.m = value.get<std::size_t>();
      } else if (key == "k_max") {
        p.k_max = value.get<std::size_t>();
      } else if (key == "f") {
        p.f_kind = parse_energy_weight(value.get<std::string>());
      } else {
        throw ConfigError("unknown laee key '" + key + "'");
      }
    }
    return p;
  });
}

Json edges_json(const Graph& g) {
  Json out = Json::array();
  for (const Edge& e : g.edges()) out.push_back(Json::array({e.u, e.v}));
  return out;
}

Json graph_json(const Graph& g, std::string_view model, Json params, std::uint64_t seed) {
  Json j;
  j["model"] = std::string(model);
  j["node_count"] = g.node_count();
  j["directed"] = g.directed();
  j["edges"] = edges_json(g);
  j["params"] = std::move(params);
  j["seed"] = seed;
  return j;
}

Json evolution_json(const EvolutionResult& result) {
  Json j;
  j["model"] = "laee";
  j["node_count"] = result.graph.node_count();
  j["directed"] = false;
  j["join_order"] = result.report.join_order;
  j["unreached"] = result.report.unreached;
  j["edges"] = edges_json(result.graph);
  j["params"] = to_json(result.report.params);
  j["seed"] = result.report.seed;
  j["links_per_step"] = result.report.links_per_step;
  j["deferrals"] = result.report.deferrals;
  return j;
}

Graph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    Graph g(j.at("node_count").get<std::size_t>(), j.value("directed", false));
    for (const auto& e : j.at("edges")) {
      try {
        g.add_edge(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
      } catch (const LookupError& err) {
        throw ConfigError(std::string("graph: ") + err.what());
      }
    }
    return g;
  });
}

std::string format_float(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace wsntopo
