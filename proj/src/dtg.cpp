#include <algorithm>
#include <limits>
#include <vector>

#include "wsntopo/baselines.hpp"

namespace wsntopo {
namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dot(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y);
}

}  // namespace

// Circles through u and v have centers mid + t * perp(v - u). A point w with
// s = cross(u, v, w) != 0 lies strictly inside the circle for parameter t iff
// dot(w - u, w - v) < 2 t s, i.e. t above (s > 0) or below (s < 0) the
// threshold dot / (2 s). Points with s > 0 therefore cap t from above and
// points with s < 0 bound it from below; an empty circle exists iff the
// bounds leave an open interval.
bool is_delaunay_edge(std::span<const Point> points, std::size_t i, std::size_t j) {
  const Point u = points[i];
  const Point v = points[j];
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < points.size(); ++w) {
    if (w == i || w == j) continue;
    const Point p = points[w];
    const double s = cross(u, v, p);
    const double d = dot(p, u, v);
    if (s == 0.0) {
      if (d < 0.0) return false;
      continue;
    }
    const double threshold = d / (2.0 * s);
    if (s > 0.0) {
      upper = std::min(upper, threshold);
    } else {
      lower = std::max(lower, threshold);
    }
    if (!(lower < upper)) return false;
  }
  return true;
}

std::vector<Edge> dtg_links(const Deployment& deployment,
                            std::span<const NodeId> members) {
  std::vector<Point> points;
  points.reserve(members.size());
  for (NodeId v : members) points.push_back(deployment.positions()[v]);
  const double r2 = deployment.range() * deployment.range();
  std::vector<Edge> links;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (distance_squared(points[i], points[j]) > r2) continue;
      if (is_delaunay_edge(points, i, j)) {
        links.push_back({std::min(members[i], members[j]), std::max(members[i], members[j])});
      }
    }
  }
  return links;
}

Graph dtg_topology(const Deployment& deployment) {
  const NeighborIndex index(deployment);
  const auto& points = deployment.positions();
  Graph g(deployment.size());
  for (NodeId v = 0; v < deployment.size(); ++v) {
    for (NodeId u : index.within_range(v)) {
      if (v < u && is_delaunay_edge(points, v, u)) g.add_edge(v, u);
    }
  }
  return g;
}

}  // namespace wsntopo
