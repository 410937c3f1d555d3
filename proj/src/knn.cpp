#include <algorithm>
#include <string>
#include <utility>

#include "wsntopo/baselines.hpp"
#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

void link_nearest(const Deployment& deployment, NodeId v,
                  std::vector<NodeId> candidates, std::size_t k,
                  std::vector<Edge>& out) {
  const Point p = deployment.positions()[v];
  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(candidates.size());
  for (NodeId u : candidates) {
    ranked.emplace_back(distance_squared(p, deployment.positions()[u]), u);
  }
  const std::size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end());
  for (std::size_t i = 0; i < keep; ++i) out.push_back({v, ranked[i].second});
}

}  // namespace

Graph knn_topology(const Deployment& deployment, std::size_t k) {
  if (k < 1) throw ConfigError("knn needs k >= 1");
  const NeighborIndex index(deployment);
  std::vector<Edge> links;
  for (NodeId v = 0; v < deployment.size(); ++v) {
    link_nearest(deployment, v, index.within_range(v), k, links);
  }
  return Graph::from_edges(deployment.size(), links, true);
}

std::vector<Edge> knn_links(const Deployment& deployment,
                            std::span<const NodeId> members, std::size_t k) {
  if (k < 1) throw ConfigError("knn needs k >= 1");
  const double r2 = deployment.range() * deployment.range();
  std::vector<Edge> links;
  for (NodeId v : members) {
    std::vector<NodeId> candidates;
    for (NodeId u : members) {
      if (u != v && distance_squared(deployment.positions()[v],
                                     deployment.positions()[u]) <= r2) {
        candidates.push_back(u);
      }
    }
    link_nearest(deployment, v, std::move(candidates), k, links);
  }
  return links;
}

}  // namespace wsntopo
