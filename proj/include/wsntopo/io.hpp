#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wsntopo/geometry.hpp"
#include "wsntopo/graph.hpp"
#include "wsntopo/laee.hpp"

namespace wsntopo {

// Key order in emitted documents is the insertion order.
using Json = nlohmann::ordered_json;

// {"n", "side", "r", "sink_position": [x, y]}
Json to_json(const DeploymentConfig& config);
DeploymentConfig deployment_config_from_json(const Json& j);

// {"config", "positions": [[x, y], ...], "energies": [...], "sink"}
Json to_json(const Deployment& deployment);
Deployment deployment_from_json(const Json& j);

// {"m0", "e0", "m", "k_max", "f"}
Json to_json(const LaeeParams& params);
LaeeParams laee_params_from_json(const Json& j, LaeeParams defaults = {});

std::string_view energy_weight_name(EnergyWeight kind);
EnergyWeight parse_energy_weight(std::string_view name);

// Sorted [[u, v], ...] with u < v for undirected graphs.
Json edges_json(const Graph& g);

// {"model", "node_count", "directed", "edges", "params", "seed"}
Json graph_json(const Graph& g, std::string_view model, Json params, std::uint64_t seed);

// {"model", "node_count", "directed", "join_order", "unreached", "edges",
//  "params", "seed", "links_per_step", "deferrals"}
Json evolution_json(const EvolutionResult& result);

// Reads "node_count", "directed" (default false) and "edges" from any of the
// graph documents above. Throws ConfigError on malformed input.
Graph graph_from_json(const Json& j);

// %.9g
std::string format_float(double value);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

}  // namespace wsntopo
