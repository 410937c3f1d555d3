#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsntopo/graph.hpp"

namespace wsntopo {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

inline double distance_squared(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point a, Point b);

/// Square deployment region [0, side]^2 with a disk radio model of radius
/// `range`. Defaults are the reference experiment: 1000 nodes on a
/// 1000 m x 1000 m field, 100 m range, sink at the (0, 0) corner.
struct DeploymentConfig {
  std::size_t n = 1000;
  double side = 1000.0;
  double range = 100.0;
  Point sink_position{0.0, 0.0};

  bool operator==(const DeploymentConfig&) const = default;

  // Throws ConfigError.
  void validate() const;

  double area() const { return side * side; }
  // Probability that a uniformly placed node falls inside a given node's
  // disk, ignoring border effects: pi r^2 / S.
  double coverage_fraction() const;
  // n * phi - 1.
  double expected_neighbor_count() const;
};

struct EnergyBounds {
  double lo = 0.5;
  double hi = 1.0;
  void validate() const;
};

/// Immutable node placement. Node 0 is the sink.
class Deployment {
 public:
  // Validates every invariant; throws ConfigError on violation.
  Deployment(DeploymentConfig config, std::vector<Point> positions,
             std::vector<double> energies, NodeId sink = 0);

  const DeploymentConfig& config() const noexcept { return config_; }
  const std::vector<Point>& positions() const noexcept { return positions_; }
  const std::vector<double>& energies() const noexcept { return energies_; }
  NodeId sink() const noexcept { return sink_; }
  std::size_t size() const noexcept { return positions_.size(); }
  double range() const noexcept { return config_.range; }

  Point position(NodeId v) const;
  double energy(NodeId v) const;

  bool operator==(const Deployment&) const = default;

 private:
  DeploymentConfig config_;
  std::vector<Point> positions_;
  std::vector<double> energies_;
  NodeId sink_ = 0;
};

// Draw order on Rng(seed): x then y for nodes 1..n-1, then energies for
// nodes 0..n-1 (the sink draws an energy like every other node).
Deployment deploy(const DeploymentConfig& config, EnergyBounds energy,
                  std::uint64_t seed);

/// Uniform grid over the region with cell size equal to the range; a radius
/// query only inspects the 3x3 block of cells around the query point.
class NeighborIndex {
 public:
  explicit NeighborIndex(const Deployment& deployment);

  // Sorted ids u != v with distance(u, v) <= range. Throws LookupError.
  std::vector<NodeId> within_range(NodeId v) const;

 private:
  std::size_t cell_of(double coordinate) const;

  const Deployment* deployment_;
  double cell_size_;
  std::size_t cells_per_side_;
  std::vector<std::vector<NodeId>> cells_;
};

// The HELLO-discovered set of nodes within range of v, sorted by id.
std::vector<NodeId> potential_neighbors(const Deployment& deployment, NodeId v);

// potential_neighbors for every node, computed with one index.
std::vector<std::vector<NodeId>> potential_neighbor_lists(
    const Deployment& deployment);

// Edge (u, v) iff distance <= range.
Graph udg_graph(const Deployment& deployment);

enum class NeighborCountModel { kBinomial, kPoisson };

// Probability that a disk-sized subarea holds k of the n nodes.
double neighbor_count_pmf(std::size_t n, double phi, std::size_t k,
                          NeighborCountModel model = NeighborCountModel::kBinomial);
double neighbor_count_pmf(const DeploymentConfig& config, std::size_t k,
                          NeighborCountModel model = NeighborCountModel::kBinomial);

}  // namespace wsntopo
