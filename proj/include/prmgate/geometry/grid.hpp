#pragma once

#include "prmgate/geometry/types.hpp"

namespace prmgate {

inline bool point_in_any_obstacle(const Workspace& w, const Eigen::Vector3d& p) {
  for (const auto& box : w.obstacles)
    if (box.contains(p, w.dim())) return true;
  return false;
}

// One cell per workspace unit; a cell is occupied (+1) iff its center lies
// inside an obstacle, free cells are -1.
inline OccupancyGrid rasterize(const Workspace& w) {
  OccupancyGrid g;
  g.dim = w.dim();
  g.dims = {static_cast<int>(w.extents[0]), static_cast<int>(w.extents[1]),
            g.dim == 3 ? static_cast<int>(w.extents[2]) : 1};
  g.values.resize(g.size());
  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        Eigen::Vector3d center(x + 0.5, y + 0.5, g.dim == 3 ? z + 0.5 : 0.0);
        g.values[g.index(x, y, z)] = point_in_any_obstacle(w, center) ? 1.0f : -1.0f;
      }
  return g;
}

}  // namespace prmgate
