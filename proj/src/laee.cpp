#include "wsntopo/laee.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

constexpr int kSeedAttempts = 100;

// Minimal union-find over seed members.
struct Components {
  explicit Components(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

double energy_weight(EnergyWeight kind, double energy) {
  switch (kind) {
    case EnergyWeight::kIdentity:
      return energy;
    case EnergyWeight::kSqrt:
      return std::sqrt(energy);
    case EnergyWeight::kSquare:
      return energy * energy;
  }
  return energy;
}

void LaeeParams::validate() const {
  if (m0 < 2) throw ConfigError("m0 must be at least 2, got " + std::to_string(m0));
  if (e0 < 1 || e0 > m0 * (m0 - 1) / 2) {
    throw ConfigError("e0 must lie in [1, m0(m0-1)/2], got " + std::to_string(e0));
  }
  if (m < 1 || m > m0) {
    throw ConfigError("m must lie in [1, m0], got m=" + std::to_string(m) +
                      " m0=" + std::to_string(m0));
  }
  if (m >= k_max) {
    throw ConfigError("m must be below k_max, got m=" + std::to_string(m) +
                      " k_max=" + std::to_string(k_max));
  }
}

LaeeEvolution::LaeeEvolution(const Deployment& deployment, LaeeParams params)
    : deployment_(&deployment),
      params_(params),
      neighbors_(wsntopo::potential_neighbor_lists(deployment)) {
  params_.validate();
  if (params_.m0 > deployment.size()) {
    throw ConfigError("m0 exceeds the number of deployed nodes");
  }
}

void LaeeEvolution::init_seed_topology(Rng& rng) {
  if (seeded_) throw StateError("seed topology already initialized");
  const NodeId sink = deployment_->sink();
  const std::size_t m0 = params_.m0;
  const std::size_t e0 = params_.e0;

  std::vector<NodeId> pool = neighbors_[sink];
  if (pool.size() < m0 - 1) {
    throw SeedError("sink has " + std::to_string(pool.size()) +
                    " potential neighbors but the seed needs m0-1=" +
                    std::to_string(m0 - 1) + "; lower m0 or re-deploy");
  }
  if (e0 < m0 - 1) {
    throw SeedError("e0=" + std::to_string(e0) + " links cannot connect m0=" +
                    std::to_string(m0) + " seed nodes");
  }
  for (std::size_t i = 0; i + 1 < m0; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  }
  std::vector<NodeId> members{sink};
  members.insert(members.end(), pool.begin(), pool.begin() + (m0 - 1));

  const double r2 = deployment_->range() * deployment_->range();
  std::vector<std::pair<std::size_t, std::size_t>> feasible;
  for (std::size_t i = 0; i < m0; ++i) {
    for (std::size_t j = i + 1; j < m0; ++j) {
      if (distance_squared(deployment_->positions()[members[i]],
                           deployment_->positions()[members[j]]) <= r2) {
        feasible.emplace_back(i, j);
      }
    }
  }
  if (feasible.size() < e0) {
    throw SeedError("only " + std::to_string(feasible.size()) +
                    " in-range pairs among the seed nodes, e0=" + std::to_string(e0));
  }

  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  bool accepted = false;
  for (int attempt = 0; attempt < kSeedAttempts && !accepted; ++attempt) {
    auto pairs = feasible;
    for (std::size_t i = 0; i < e0; ++i) {
      std::swap(pairs[i], pairs[i + rng.below(pairs.size() - i)]);
    }
    chosen.assign(pairs.begin(), pairs.begin() + e0);
    Components components(m0);
    std::vector<std::size_t> degree(m0, 0);
    std::size_t merges = 0;
    for (auto [i, j] : chosen) {
      merges += components.unite(i, j) ? 1 : 0;
      ++degree[i];
      ++degree[j];
    }
    accepted = merges == m0 - 1 &&
               *std::max_element(degree.begin(), degree.end()) <= params_.k_max;
  }
  if (!accepted) {
    throw SeedError("no connected seed of " + std::to_string(e0) + " links found in " +
                    std::to_string(kSeedAttempts) + " draws");
  }

  std::vector<Edge> links;
  for (auto [i, j] : chosen) links.push_back({members[i], members[j]});
  install_seed(members, links);
}

void LaeeEvolution::seed_from(std::span<const NodeId> members, std::span<const Edge> links) {
  if (seeded_) throw StateError("seed topology already initialized");
  const std::size_t n = deployment_->size();
  std::vector<std::size_t> index(n, n);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= n) throw SeedError("seed member out of range");
    if (index[members[i]] != n) throw SeedError("duplicate seed member");
    index[members[i]] = i;
  }
  if (index[deployment_->sink()] == n) throw SeedError("seed must contain the sink");
  const double r2 = deployment_->range() * deployment_->range();
  Components components(members.size());
  std::size_t merges = 0;
  std::vector<std::size_t> degree(members.size(), 0);
  Graph check(n);
  for (const Edge& e : links) {
    if (e.u >= n || e.v >= n || index[e.u] == n || index[e.v] == n) {
      throw SeedError("seed link touches a non-member");
    }
    if (e.u == e.v || !check.add_edge(e.u, e.v)) throw SeedError("invalid or duplicate seed link");
    if (distance_squared(deployment_->positions()[e.u], deployment_->positions()[e.v]) > r2) {
      throw SeedError("seed link longer than the transmission range");
    }
    merges += components.unite(index[e.u], index[e.v]) ? 1 : 0;
    ++degree[index[e.u]];
    ++degree[index[e.v]];
  }
  if (merges + 1 != members.size()) throw SeedError("seed topology is not connected");
  if (!degree.empty() && *std::max_element(degree.begin(), degree.end()) > params_.k_max) {
    throw SeedError("seed topology exceeds k_max");
  }
  install_seed(members, links);
}

void LaeeEvolution::install_seed(std::span<const NodeId> members, std::span<const Edge> links) {
  const std::size_t n = deployment_->size();
  state_ = EvolutionState{};
  state_.in_topology.assign(n, 0);
  state_.deferred.assign(n, 0);
  state_.degrees.assign(n, 0);
  state_.open_neighbors.assign(n, 0);
  for (NodeId v : members) {
    state_.in_topology[v] = 1;
    state_.join_order.push_back(v);
  }
  for (const Edge& e : links) add_link(e.u, e.v);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : neighbors_[v]) {
      if (!state_.in_topology[u]) ++state_.open_neighbors[v];
    }
  }
  seeded_ = true;
}

void LaeeEvolution::add_link(NodeId u, NodeId v) {
  state_.edges.push_back({std::min(u, v), std::max(u, v)});
  for (NodeId x : {u, v}) {
    if (++state_.degrees[x] == params_.k_max) ++state_.q;
  }
}

std::optional<GrowthPair> LaeeEvolution::select_growth_pair(Rng& rng) const {
  if (!seeded_) throw StateError("seed topology not initialized");
  std::size_t best = 0;
  std::vector<NodeId> leaders;
  for (NodeId v = 0; v < deployment_->size(); ++v) {
    if (!state_.in_topology[v]) continue;
    const std::size_t open = state_.open_neighbors[v];
    if (open == 0 || open < best) continue;
    if (open > best) {
      best = open;
      leaders.clear();
    }
    leaders.push_back(v);
  }
  if (leaders.empty()) return std::nullopt;
  const NodeId a = leaders[rng.below(leaders.size())];

  std::vector<NodeId> open;
  for (NodeId u : neighbors_[a]) {
    if (!state_.in_topology[u] && !state_.deferred[u]) open.push_back(u);
  }
  return GrowthPair{a, open[rng.below(open.size())]};
}

std::vector<AttachmentCandidate> LaeeEvolution::attachment_weights(NodeId b) const {
  if (!seeded_) throw StateError("seed topology not initialized");
  if (b >= deployment_->size()) throw LookupError("node id " + std::to_string(b) + " out of range");
  if (state_.in_topology[b]) {
    throw StateError("node " + std::to_string(b) + " is already in the topology");
  }
  std::vector<AttachmentCandidate> out;
  for (NodeId u : neighbors_[b]) {
    if (!state_.in_topology[u] || state_.degrees[u] >= params_.k_max) continue;
    const double k = static_cast<double>(std::max<std::size_t>(state_.degrees[u], 1));
    out.push_back({u, energy_weight(params_.f_kind, deployment_->energies()[u]) * k});
  }
  return out;
}

std::size_t LaeeEvolution::attach(NodeId b, Rng& rng) {
  const auto candidates = attachment_weights(b);
  if (candidates.empty()) {
    throw StateError("node " + std::to_string(b) + " has no attachable neighbor");
  }

  std::vector<NodeId> targets;
  if (candidates.size() <= params_.m) {
    for (const auto& c : candidates) targets.push_back(c.node);
  } else {
    std::vector<double> weights;
    weights.reserve(candidates.size());
    for (const auto& c : candidates) weights.push_back(c.weight);
    for (std::size_t i = 0; i < params_.m; ++i) {
      const std::size_t pick = rng.weighted_index(weights);
      targets.push_back(candidates[pick].node);
      weights[pick] = 0.0;
    }
  }

  const bool was_open = !state_.deferred[b];
  state_.deferred[b] = 0;
  state_.in_topology[b] = 1;
  for (NodeId target : targets) add_link(b, target);
  ++state_.t;
  state_.join_order.push_back(b);
  state_.links_per_step.push_back(targets.size());

  if (was_open) {
    for (NodeId u : neighbors_[b]) --state_.open_neighbors[u];
  }
  if (state_.degrees[b] < params_.k_max) {
    for (NodeId d : neighbors_[b]) {
      if (!state_.deferred[d]) continue;
      state_.deferred[d] = 0;
      for (NodeId w : neighbors_[d]) ++state_.open_neighbors[w];
    }
  }
  return targets.size();
}

void LaeeEvolution::defer(NodeId b) {
  state_.deferred[b] = 1;
  ++state_.deferrals;
  for (NodeId u : neighbors_[b]) --state_.open_neighbors[u];
}

StepOutcome LaeeEvolution::step(Rng& rng) {
  const auto pair = select_growth_pair(rng);
  if (!pair) return StepOutcome::kExhausted;
  if (attachment_weights(pair->b).empty()) {
    defer(pair->b);
    return StepOutcome::kDeferred;
  }
  attach(pair->b, rng);
  return StepOutcome::kJoined;
}

std::vector<NodeId> LaeeEvolution::scattered_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < deployment_->size(); ++v) {
    if (!seeded_ || !state_.in_topology[v]) out.push_back(v);
  }
  return out;
}

Graph LaeeEvolution::graph() const {
  return Graph::from_edges(deployment_->size(), state_.edges);
}

EvolutionResult evolve(const Deployment& deployment, const LaeeParams& params,
                       std::uint64_t seed) {
  LaeeEvolution evolution(deployment, params);
  Rng rng(seed);
  evolution.init_seed_topology(rng);
  while (evolution.step(rng) != StepOutcome::kExhausted) {
  }
  const auto& state = evolution.state();
  EvolutionReport report{state.join_order, evolution.scattered_nodes(),
                         state.links_per_step, state.deferrals, params, seed};
  return {evolution.graph(), std::move(report)};
}

}  // namespace wsntopo
