#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsntopo/geometry.hpp"
#include "wsntopo/graph.hpp"
#include "wsntopo/rng.hpp"

namespace wsntopo {

// Increasing map from remaining energy to attachment strength f(E).
enum class EnergyWeight { kIdentity, kSqrt, kSquare };

double energy_weight(EnergyWeight kind, double energy);

struct LaeeParams {
  std::size_t m0 = 10;     // nodes in the seed topology (sink included)
  std::size_t e0 = 10;     // random links inside the seed
  std::size_t m = 3;       // links requested per joining node
  std::size_t k_max = 30;  // degree cap
  EnergyWeight f_kind = EnergyWeight::kIdentity;

  // Throws ConfigError.
  void validate() const;
};

/// Mutable state of one evolution run.
///
/// A node is scattered while in_topology is false. A scattered node is
/// `deferred` when it was picked to join but every in-topology potential
/// neighbor was saturated; it is skipped by growth-pair selection until a
/// new unsaturated node joins within its range.
struct EvolutionState {
  std::vector<char> in_topology;
  std::vector<char> deferred;
  std::vector<std::size_t> degrees;
  // Per node: potential neighbors that are scattered and not deferred.
  std::vector<std::size_t> open_neighbors;
  std::size_t q = 0;  // nodes with degree == k_max
  std::vector<Edge> edges;
  std::size_t t = 0;  // nodes added after the seed
  std::vector<NodeId> join_order;
  std::vector<std::size_t> links_per_step;
  std::size_t deferrals = 0;

  std::size_t in_topology_count() const { return join_order.size(); }
};

struct GrowthPair {
  NodeId a = 0;  // in-topology node with the most open scattered neighbors
  NodeId b = 0;  // the scattered node that joins
};

struct AttachmentCandidate {
  NodeId node = 0;
  double weight = 0.0;  // unnormalized attachment mass f(E) * max(k, 1)
};

enum class StepOutcome { kJoined, kDeferred, kExhausted };

/// Two-phase growth over a fixed deployment: a connected seed around the
/// sink, then one scattered node per step attached by energy-weighted
/// preferential attachment restricted to its in-range, unsaturated
/// in-topology neighbors.
///
/// The deployment must outlive this object.
class LaeeEvolution {
 public:
  LaeeEvolution(const Deployment& deployment, LaeeParams params);

  // Sink plus m0-1 of its potential neighbors drawn uniformly, joined by e0
  // distinct in-range links drawn uniformly; redrawn up to 100 times until
  // the seed is connected and within the degree cap. Throws SeedError.
  void init_seed_topology(Rng& rng);

  // Installs a given seed instead of drawing one (replaying a recorded run).
  // `members` must contain the sink; every link must join two members within
  // range; the seed must be connected and respect k_max. Throws SeedError.
  void seed_from(std::span<const NodeId> members, std::span<const Edge> links);

  // nullopt when no in-topology node has an open scattered neighbor.
  std::optional<GrowthPair> select_growth_pair(Rng& rng) const;

  // In-topology potential neighbors of b with degree < k_max, ascending id.
  // Throws StateError if b is already in the topology.
  std::vector<AttachmentCandidate> attachment_weights(NodeId b) const;

  // Links b to min(m, |candidates|) distinct candidates drawn sequentially
  // without replacement from the start-of-step weights. Returns the number
  // of links added. Throws StateError if b is in the topology or has no
  // candidate.
  std::size_t attach(NodeId b, Rng& rng);

  StepOutcome step(Rng& rng);

  const EvolutionState& state() const noexcept { return state_; }
  const LaeeParams& params() const noexcept { return params_; }
  const Deployment& deployment() const noexcept { return *deployment_; }
  const std::vector<std::vector<NodeId>>& potential_neighbor_lists() const noexcept {
    return neighbors_;
  }

  std::vector<NodeId> scattered_nodes() const;
  Graph graph() const;

 private:
  void install_seed(std::span<const NodeId> members, std::span<const Edge> links);
  void defer(NodeId b);
  void add_link(NodeId u, NodeId v);

  const Deployment* deployment_;
  LaeeParams params_;
  std::vector<std::vector<NodeId>> neighbors_;
  EvolutionState state_;
  bool seeded_ = false;
};

struct EvolutionReport {
  std::vector<NodeId> join_order;
  std::vector<NodeId> unreached;  // sorted; nonempty only if growth stalled
  std::vector<std::size_t> links_per_step;
  std::size_t deferrals = 0;
  LaeeParams params;
  std::uint64_t seed = 0;
};

struct EvolutionResult {
  Graph graph;
  EvolutionReport report;
};

// Seeds and grows until exhausted, drawing everything from Rng(seed).
EvolutionResult evolve(const Deployment& deployment, const LaeeParams& params,
                       std::uint64_t seed);

}  // namespace wsntopo
