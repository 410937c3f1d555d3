#include "wsntopo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "wsntopo/error.hpp"
#include "wsntopo/rng.hpp"

namespace wsntopo {

double distance(Point a, Point b) { return std::sqrt(distance_squared(a, b)); }

void DeploymentConfig::validate() const {
  if (n < 2) throw ConfigError("deployment needs n >= 2 nodes, got " + std::to_string(n));
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw ConfigError("region side must be positive, got " + std::to_string(side));
  }
  if (!(range > 0.0) || range > side) {
    throw ConfigError("transmission range must satisfy 0 < r <= side, got r=" +
                      std::to_string(range) + " side=" + std::to_string(side));
  }
  if (!(sink_position.x >= 0.0 && sink_position.x <= side &&
        sink_position.y >= 0.0 && sink_position.y <= side)) {
    throw ConfigError("sink position lies outside the region");
  }
}

double DeploymentConfig::coverage_fraction() const {
  return std::numbers::pi * range * range / area();
}

double DeploymentConfig::expected_neighbor_count() const {
  return static_cast<double>(n) * coverage_fraction() - 1.0;
}

void EnergyBounds::validate() const {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ConfigError("energy bounds must satisfy 0 < lo <= hi, got [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

Deployment::Deployment(DeploymentConfig config, std::vector<Point> positions,
                       std::vector<double> energies, NodeId sink)
    : config_(config),
      positions_(std::move(positions)),
      energies_(std::move(energies)),
      sink_(sink) {
  config_.validate();
  if (positions_.size() != config_.n || energies_.size() != config_.n) {
    throw ConfigError("deployment holds " + std::to_string(positions_.size()) +
                      " positions and " + std::to_string(energies_.size()) +
                      " energies for n=" + std::to_string(config_.n));
  }
  if (sink_ >= config_.n) throw ConfigError("sink id out of range");
  for (const Point& p : positions_) {
    if (!(p.x >= 0.0 && p.x <= config_.side && p.y >= 0.0 && p.y <= config_.side)) {
      throw ConfigError("node position outside the region");
    }
  }
  if (positions_[sink_] != config_.sink_position) {
    throw ConfigError("sink node is not at the configured sink position");
  }
  for (double e : energies_) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("node energy must be positive");
  }
}

Point Deployment::position(NodeId v) const {
  if (v >= positions_.size()) throw LookupError("node id " + std::to_string(v) + " out of range");
  return positions_[v];
}

double Deployment::energy(NodeId v) const {
  if (v >= energies_.size()) throw LookupError("node id " + std::to_string(v) + " out of range");
  return energies_[v];
}

Deployment deploy(const DeploymentConfig& config, EnergyBounds energy,
                  std::uint64_t seed) {
  config.validate();
  energy.validate();
  Rng rng(seed);
  std::vector<Point> positions(config.n);
  positions[0] = config.sink_position;
  for (std::size_t i = 1; i < config.n; ++i) {
    const double x = rng.uniform(0.0, config.side);
    const double y = rng.uniform(0.0, config.side);
    positions[i] = {x, y};
  }
  std::vector<double> energies(config.n);
  for (double& e : energies) e = rng.uniform(energy.lo, energy.hi);
  return Deployment(config, std::move(positions), std::move(energies), 0);
}

NeighborIndex::NeighborIndex(const Deployment& deployment)
    : deployment_(&deployment), cell_size_(deployment.range()) {
  cells_per_side_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(deployment.config().side / cell_size_)));
  cells_.resize(cells_per_side_ * cells_per_side_);
  for (NodeId v = 0; v < deployment.size(); ++v) {
    const Point p = deployment.positions()[v];
    cells_[cell_of(p.y) * cells_per_side_ + cell_of(p.x)].push_back(v);
  }
}

std::size_t NeighborIndex::cell_of(double coordinate) const {
  const auto c = static_cast<std::size_t>(coordinate / cell_size_);
  return std::min(c, cells_per_side_ - 1);
}

std::vector<NodeId> NeighborIndex::within_range(NodeId v) const {
  const Point p = deployment_->position(v);
  const double r2 = cell_size_ * cell_size_;
  const std::size_t cx = cell_of(p.x);
  const std::size_t cy = cell_of(p.y);
  std::vector<NodeId> out;
  for (std::size_t y = (cy == 0 ? 0 : cy - 1); y <= std::min(cy + 1, cells_per_side_ - 1); ++y) {
    for (std::size_t x = (cx == 0 ? 0 : cx - 1); x <= std::min(cx + 1, cells_per_side_ - 1); ++x) {
      for (NodeId u : cells_[y * cells_per_side_ + x]) {
        if (u != v && distance_squared(p, deployment_->positions()[u]) <= r2) {
          out.push_back(u);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> potential_neighbors(const Deployment& deployment, NodeId v) {
  if (v >= deployment.size()) throw LookupError("node id " + std::to_string(v) + " out of range");
  return NeighborIndex(deployment).within_range(v);
}

std::vector<std::vector<NodeId>> potential_neighbor_lists(const Deployment& deployment) {
  const NeighborIndex index(deployment);
  std::vector<std::vector<NodeId>> lists(deployment.size());
  for (NodeId v = 0; v < deployment.size(); ++v) lists[v] = index.within_range(v);
  return lists;
}

Graph udg_graph(const Deployment& deployment) {
  const NeighborIndex index(deployment);
  Graph g(deployment.size());
  for (NodeId v = 0; v < deployment.size(); ++v) {
    for (NodeId u : index.within_range(v)) {
      if (v < u) g.add_edge(v, u);
    }
  }
  return g;
}

double neighbor_count_pmf(std::size_t n, double phi, std::size_t k,
                          NeighborCountModel model) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw DomainError("coverage fraction must lie in [0, 1], got " + std::to_string(phi));
  }
  if (k > n) throw DomainError("k exceeds the node count");
  if (model == NeighborCountModel::kPoisson) {
    if (phi == 0.0) return k == 0 ? 1.0 : 0.0;
    return boost::math::pdf(boost::math::poisson_distribution<>(static_cast<double>(n) * phi),
                            static_cast<double>(k));
  }
  return boost::math::pdf(boost::math::binomial_distribution<>(static_cast<double>(n), phi),
                          static_cast<double>(k));
}

double neighbor_count_pmf(const DeploymentConfig& config, std::size_t k,
                          NeighborCountModel model) {
  return neighbor_count_pmf(config.n, config.coverage_fraction(), k, model);
}

}  // namespace wsntopo
