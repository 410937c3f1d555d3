#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsntopo/geometry.hpp"
#include "wsntopo/graph.hpp"
#include "wsntopo/rng.hpp"

namespace wsntopo {

// ---- k nearest neighbors -------------------------------------------------

// Directed out-links from every node to its k nearest in-range nodes, ranked
// by (distance, id). Nodes with fewer than k in-range nodes link to all.
Graph knn_topology(const Deployment& deployment, std::size_t k);

// Same rule restricted to `members`: each member ranks only other members.
// Returns directed (tail, head) out-links in member order.
std::vector<Edge> knn_links(const Deployment& deployment,
                            std::span<const NodeId> members, std::size_t k);

// ---- Delaunay triangulation graph ------------------------------------------

// Whether segment (points[i], points[j]) is an edge of the Delaunay graph of
// `points`: no point lies strictly between them on their line, and some
// circle through both has no other point strictly inside it.
bool is_delaunay_edge(std::span<const Point> points, std::size_t i, std::size_t j);

// Undirected Delaunay edges of length <= range. For fully collinear input
// this is the path of consecutive in-range points.
Graph dtg_topology(const Deployment& deployment);

// Delaunay edges (length <= range) of the point set formed by `members`.
std::vector<Edge> dtg_links(const Deployment& deployment,
                            std::span<const NodeId> members);

// ---- LEACH clustering -------------------------------------------------------

inline constexpr double kDefaultHeadProbability = 0.05;

struct ClusterAssignment {
  std::vector<NodeId> heads;       // elected heads, ascending
  std::vector<NodeId> cluster_of;  // cluster id per node: its head's id
  std::vector<NodeId> orphans;     // members with no head in range; own cluster
  std::size_t attempts = 0;        // election rounds drawn
};

// Single election round: each non-sink node becomes a head with
// probability p_head (one uniform draw per node, ascending id). Members join
// the nearest in-range head (ties to the lower id). The sink forms its own
// cluster. Rounds with no head are redrawn up to 100 times, then
// ElectionError.
ClusterAssignment leach_cluster(const Deployment& deployment, double p_head, Rng& rng);

enum class IntraClusterKind { kKnn, kDtg };

struct IntraCluster {
  IntraClusterKind kind = IntraClusterKind::kKnn;
  std::size_t k = 6;
};

struct CompositeTopology {
  Graph graph;  // undirected
  ClusterAssignment clusters;
  std::size_t sink_links = 0;   // cluster heads linked straight to the sink
  std::size_t relay_links = 0;  // heads linked to a nearer head instead
  std::vector<NodeId> detached_heads;  // heads with no in-range hop toward the sink
};

// Builds each cluster's subgraph with the intra-cluster rule, then links each
// cluster head (orphans included) to the sink when in range, otherwise to the
// nearest in-range head or sink that is strictly closer to the sink.
CompositeTopology compose_clusters(const Deployment& deployment,
                                   ClusterAssignment clusters, IntraCluster intra);

CompositeTopology leach_composite(const Deployment& deployment, double p_head,
                                  IntraCluster intra, Rng& rng);

// ---- Barabasi-Albert --------------------------------------------------------

// Non-spatial preferential attachment: a clique on m0 seed nodes, then each
// new node draws m distinct targets with probability proportional to degree.
// Sampling uses the edge-endpoint urn (both endpoints of each edge, in
// insertion order) on Rng(seed). Throws ConfigError unless 1 <= m <= m0 < n.
Graph ba_graph(std::size_t n, std::size_t m0, std::size_t m, std::uint64_t seed);

}  // namespace wsntopo
