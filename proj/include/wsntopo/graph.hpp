#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wsntopo {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Topology over node ids 0..node_count-1 with sorted adjacency lists.
///
/// Undirected graphs keep symmetric adjacency. A directed graph stores
/// out-neighbors only; it is used for the raw KNN out-link view, where
/// degree() is the out-degree.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count, bool directed = false)
      : adjacency_(node_count), directed_(directed) {}

  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          bool directed = false);

  // Returns false if the edge already exists. Self-loops and out-of-range ids
  // throw LookupError.
  bool add_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool directed() const noexcept { return directed_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }

  // Undirected: (min, max) pairs. Directed: (tail, head). Sorted either way.
  std::vector<Edge> edges() const;

  // Edge {u, v} present iff either direction is present here.
  Graph undirected_view() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  bool directed_ = false;
  std::size_t edge_count_ = 0;
};

}  // namespace wsntopo
