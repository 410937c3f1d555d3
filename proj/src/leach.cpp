#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "wsntopo/baselines.hpp"
#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

constexpr int kElectionAttempts = 100;

// Nearest node of `pool` within range of p (ties to the lower id), if any.
std::optional<NodeId> nearest_in_range(const Deployment& deployment, Point p,
                                       std::span<const NodeId> pool,
                                       NodeId self) {
  const double r2 = deployment.range() * deployment.range();
  std::optional<NodeId> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (NodeId h : pool) {
    if (h == self) continue;
    const double d2 = distance_squared(p, deployment.positions()[h]);
    if (d2 <= r2 && (d2 < best_d2 || (d2 == best_d2 && h < *best))) {
      best = h;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace

ClusterAssignment leach_cluster(const Deployment& deployment, double p_head, Rng& rng) {
  if (!(p_head > 0.0 && p_head < 1.0)) {
    throw ConfigError("cluster-head probability must lie in (0, 1), got " +
                      std::to_string(p_head));
  }
  const NodeId sink = deployment.sink();
  ClusterAssignment out;
  while (out.heads.empty()) {
    if (out.attempts == kElectionAttempts) {
      throw ElectionError("no cluster head elected in " +
                          std::to_string(kElectionAttempts) + " rounds");
    }
    ++out.attempts;
    for (NodeId v = 0; v < deployment.size(); ++v) {
      if (v != sink && rng.uniform() < p_head) out.heads.push_back(v);
    }
  }

  out.cluster_of.assign(deployment.size(), 0);
  std::vector<char> is_head(deployment.size(), 0);
  for (NodeId h : out.heads) {
    is_head[h] = 1;
    out.cluster_of[h] = h;
  }
  out.cluster_of[sink] = sink;
  for (NodeId v = 0; v < deployment.size(); ++v) {
    if (v == sink || is_head[v]) continue;
    if (auto head = nearest_in_range(deployment, deployment.positions()[v], out.heads, v)) {
      out.cluster_of[v] = *head;
    } else {
      out.cluster_of[v] = v;
      out.orphans.push_back(v);
    }
  }
  return out;
}

CompositeTopology compose_clusters(const Deployment& deployment,
                                   ClusterAssignment clusters, IntraCluster intra) {
  const NodeId sink = deployment.sink();
  if (clusters.cluster_of.size() != deployment.size()) {
    throw ConfigError("cluster assignment does not cover the deployment");
  }
  std::map<NodeId, std::vector<NodeId>> members;
  for (NodeId v = 0; v < deployment.size(); ++v) members[clusters.cluster_of[v]].push_back(v);

  CompositeTopology out;
  out.graph = Graph(deployment.size());
  for (const auto& [head, nodes] : members) {
    const auto links = intra.kind == IntraClusterKind::kKnn
                           ? knn_links(deployment, nodes, intra.k)
                           : dtg_links(deployment, nodes);
    for (const Edge& e : links) out.graph.add_edge(e.u, e.v);
  }

  // Backbone: every cluster representative other than the sink.
  std::vector<NodeId> hops{sink};
  for (const auto& entry : members) {
    if (entry.first != sink) hops.push_back(entry.first);
  }
  const Point sink_pos = deployment.positions()[sink];
  const double r2 = deployment.range() * deployment.range();
  for (const auto& entry : members) {
    const NodeId head = entry.first;
    if (head == sink) continue;
    const Point p = deployment.positions()[head];
    const double to_sink = distance_squared(p, sink_pos);
    if (to_sink <= r2) {
      out.graph.add_edge(head, sink);
      ++out.sink_links;
      continue;
    }
    std::vector<NodeId> closer;
    for (NodeId h : hops) {
      if (distance_squared(deployment.positions()[h], sink_pos) < to_sink) closer.push_back(h);
    }
    if (auto next = nearest_in_range(deployment, p, closer, head)) {
      out.graph.add_edge(head, *next);
      ++out.relay_links;
    } else {
      out.detached_heads.push_back(head);
    }
  }
  out.clusters = std::move(clusters);
  return out;
}

CompositeTopology leach_composite(const Deployment& deployment, double p_head,
                                  IntraCluster intra, Rng& rng) {
  return compose_clusters(deployment, leach_cluster(deployment, p_head, rng), intra);
}

}  // namespace wsntopo
