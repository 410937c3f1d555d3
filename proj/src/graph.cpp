#include "wsntopo/graph.hpp"

#include <algorithm>
#include <string>

#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

bool insert_sorted(std::vector<NodeId>& list, NodeId v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it != list.end() && *it == v) return false;
  list.insert(it, v);
  return true;
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        bool directed) {
  Graph g(node_count, directed);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

bool Graph::add_edge(NodeId u, NodeId v) {
  if (u >= adjacency_.size() || v >= adjacency_.size()) {
    throw LookupError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                      ") references a node outside 0.." +
                      std::to_string(adjacency_.size()));
  }
  if (u == v) throw LookupError("self-loop on node " + std::to_string(u));
  if (!insert_sorted(adjacency_[u], v)) return false;
  if (!directed_) insert_sorted(adjacency_[v], u);
  ++edge_count_;
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (directed_ || u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph Graph::undirected_view() const {
  if (!directed_) return *this;
  Graph g(adjacency_.size(), false);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) g.add_edge(u, v);
  }
  return g;
}

}  // namespace wsntopo
