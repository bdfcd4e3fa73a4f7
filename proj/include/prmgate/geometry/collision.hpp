#pragma once

#include <cmath>

#include "prmgate/geometry/config_space.hpp"
#include "prmgate/geometry/fk.hpp"
#include "prmgate/geometry/types.hpp"

namespace prmgate {

namespace detail {

// Separating-axis test between two oriented boxes. Candidate axes are the
// face normals of both boxes plus (in 3D) their pairwise edge cross products.
// Boxes are closed: touching projections do not separate.
inline bool obb_obb_intersect(const OrientedBox& a, const OrientedBox& b, int dim) {
  const Eigen::Vector3d t = b.center - a.center;

  auto separated = [&](const Eigen::Vector3d& axis) {
    const double len = axis.norm();
    if (len < 1e-12) return false;  // degenerate cross product
    const Eigen::Vector3d L = axis / len;
    double ra = 0, rb = 0;
    for (int i = 0; i < 3; ++i) {
      ra += a.half_extents[i] * std::abs(L.dot(a.rotation.col(i)));
      rb += b.half_extents[i] * std::abs(L.dot(b.rotation.col(i)));
    }
    return std::abs(L.dot(t)) > ra + rb;
  };

  if (dim == 2) {
    // Face normals of both rectangles; no cross-product axes in the plane.
    return !(separated(a.rotation.col(0)) || separated(a.rotation.col(1)) ||
             separated(b.rotation.col(0)) || separated(b.rotation.col(1)));
  }

  for (int i = 0; i < 3; ++i) {
    if (separated(a.rotation.col(i))) return false;
    if (separated(b.rotation.col(i))) return false;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (separated(Eigen::Vector3d(a.rotation.col(i)).cross(
              Eigen::Vector3d(b.rotation.col(j)))))
        return false;
  return true;
}

inline OrientedBox as_oriented_box(const AxisAlignedBox& b) {
  return OrientedBox{b.center(), b.half_extents(), Eigen::Matrix3d::Identity()};
}

inline bool obb_aabb_intersect(const OrientedBox& a, const AxisAlignedBox& b, int dim) {
  return obb_obb_intersect(a, as_oriented_box(b), dim);
}

inline bool box_inside_extents(const OrientedBox& box, const Eigen::Vector3d& extents,
                               int dim) {
  const int corners = dim == 2 ? 4 : 8;
  for (int i = 0; i < corners; ++i) {
    const Eigen::Vector3d c = box.corner(i);
    for (int a = 0; a < dim; ++a)
      if (c[a] < 0.0 || c[a] > extents[a]) return false;
  }
  return true;
}

}  // namespace detail

// Exact collision oracle: true iff any link intersects an obstacle or leaves
// the workspace extents.
inline bool collide(const RobotModel& r, const Configuration& q, const Workspace& w) {
  const auto links = forward_kinematics(r, q);
  const int dim = w.dim();
  for (const OrientedBox& link : links) {
    if (!detail::box_inside_extents(link, w.extents, dim)) return true;
    for (const AxisAlignedBox& obs : w.obstacles)
      if (detail::obb_aabb_intersect(link, obs, dim)) return true;
  }
  return false;
}

// Straight-line local planner: checks interpolated configurations at
// normalized-step resolution <= `resolution`, endpoints inclusive, against an
// arbitrary validity predicate.
template <typename ValidPred>
bool check_edge(const ConfigSpace& cspace, const Configuration& q1,
                const Configuration& q2, ValidPred&& is_valid, double resolution = 0.1) {
  const double d = cspace.distance(q1, q2);
  const int steps = std::max(1, static_cast<int>(std::ceil(d / resolution)));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    if (!is_valid(cspace.interpolate(q1, q2, t))) return false;
  }
  return true;
}

inline bool validate_edge(const RobotModel& r, const Configuration& q1,
                          const Configuration& q2, const Workspace& w,
                          double resolution = 0.1) {
  const ConfigSpace cspace(r, w.extents);
  return check_edge(cspace, q1, q2,
                    [&](const Configuration& q) { return !collide(r, q, w); }, resolution);
}

}  // namespace prmgate
