#include <algorithm>
#include <string>
#include <vector>

#include "wsntopo/baselines.hpp"
#include "wsntopo/error.hpp"

namespace wsntopo {

Graph ba_graph(std::size_t n, std::size_t m0, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m > m0 || m0 >= n) {
    throw ConfigError("BA needs 1 <= m <= m0 < n, got n=" + std::to_string(n) +
                      " m0=" + std::to_string(m0) + " m=" + std::to_string(m));
  }
  Rng rng(seed);
  Graph g(n);
  std::vector<NodeId> urn;
  urn.reserve(2 * (m0 * (m0 - 1) / 2 + (n - m0) * m));
  auto link = [&](NodeId u, NodeId v) {
    g.add_edge(u, v);
    urn.push_back(u);
    urn.push_back(v);
  };
  for (NodeId u = 0; u < m0; ++u) {
    for (NodeId v = u + 1; v < m0; ++v) link(u, v);
  }

  std::vector<NodeId> targets;
  for (NodeId v = static_cast<NodeId>(m0); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      // An edgeless seed (m0 == 1) has no degree mass yet: draw uniformly.
      const NodeId pick = urn.empty() ? static_cast<NodeId>(rng.below(v))
                                      : urn[rng.below(urn.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (NodeId t : targets) link(v, t);
  }
  return g;
}

}  // namespace wsntopo
