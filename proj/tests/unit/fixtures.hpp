#pragma once

#include <algorithm>
#include <vector>

#include "wsntopo/geometry.hpp"

namespace fixtures {

// Hand-placed deployment: node 0 is the sink at points[0]. The region is
// sized to hold every point.
inline wsntopo::Deployment place(std::vector<wsntopo::Point> points, double range,
                                 std::vector<double> energies = {}) {
  double side = range;
  for (const auto& p : points) side = std::max({side, p.x, p.y});
  if (energies.empty()) energies.assign(points.size(), 1.0);
  wsntopo::DeploymentConfig config;
  config.n = points.size();
  config.side = side;
  config.range = range;
  config.sink_position = points.front();
  return wsntopo::Deployment(config, std::move(points), std::move(energies));
}

}  // namespace fixtures
