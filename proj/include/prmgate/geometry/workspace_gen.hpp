#pragma once

#include <utility>

#include "prmgate/core/rng.hpp"
#include "prmgate/geometry/types.hpp"

namespace prmgate {

// Predefined obstacle shape sets per class (integer box dimensions).
inline std::vector<Eigen::Vector3d> obstacle_shapes(WorkspaceClass cls) {
  std::vector<Eigen::Vector3d> shapes;
  switch (cls) {
    case WorkspaceClass::TwoDS:
      for (int w = 2; w <= 8; ++w)
        for (int h = 2; h <= 8; ++h) shapes.emplace_back(w, h, 0);
      break;
    case WorkspaceClass::ThreeDO:
      for (int w = 1; w <= 4; ++w)
        for (int d = 1; d <= 4; ++d)
          for (int h = 2; h <= 6; ++h) shapes.emplace_back(w, d, h);
      break;
    case WorkspaceClass::ThreeDC:
      shapes.emplace_back(1, 1, 1);
      break;
  }
  return shapes;
}

inline std::pair<int, int> obstacle_count_range(WorkspaceClass cls) {
  switch (cls) {
    case WorkspaceClass::TwoDS: return {3, 5};
    case WorkspaceClass::ThreeDO: return {25, 30};
    case WorkspaceClass::ThreeDC: return {110, 125};
  }
  return {0, 0};
}

// Randomly places integer-sized, integer-positioned axis-aligned blocks.
// Pure function of (class, extents, seed).
inline Workspace generate_workspace(WorkspaceClass cls, std::uint64_t seed,
                                    Eigen::Vector3d extents = Eigen::Vector3d::Zero()) {
  if (extents.isZero()) extents = default_extents(cls);
  Workspace w;
  w.cls = cls;
  w.extents = extents;
  w.seed = seed;

  Rng rng(seed);
  const auto shapes = obstacle_shapes(cls);
  const auto [lo, hi] = obstacle_count_range(cls);
  const int count = uniform_int(rng, lo, hi);
  const int dim = w.dim();

  for (int i = 0; i < count; ++i) {
    const Eigen::Vector3d& size = shapes[static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<int>(shapes.size()) - 1))];
    AxisAlignedBox box;
    for (int a = 0; a < dim; ++a) {
      const int slack = static_cast<int>(extents[a] - size[a]);
      const int pos = uniform_int(rng, 0, slack);
      box.min[a] = pos;
      box.max[a] = pos + size[a];
    }
    w.obstacles.push_back(box);
  }
  return w;
}

}  // namespace prmgate
