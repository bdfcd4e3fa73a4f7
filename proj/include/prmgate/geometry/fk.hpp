#pragma once

#include <Eigen/Geometry>

#include "prmgate/geometry/types.hpp"

namespace prmgate {

// Places each link box in the workspace frame. The base pose is translation
// followed by intrinsic Z-Y-X Euler rotation (or yaw only); each jointed link
// rotates about its local axis at the attachment point on its parent.
inline std::vector<OrientedBox> forward_kinematics(const RobotModel& r,
                                                   const Configuration& q) {
  if (q.size() != r.dof)
    throw std::invalid_argument("configuration size " + std::to_string(q.size()) +
                                " does not match robot dof " + std::to_string(r.dof));

  Eigen::Isometry3d frame = Eigen::Isometry3d::Identity();
  Eigen::Vector3d t(q[0], q.size() > 1 ? q[1] : 0.0, r.base_z);
  if (r.trans_dof == 3) t.z() = q[2];
  frame.translate(t);
  int next = r.trans_dof;
  if (r.base_rot_dof == 1) {
    frame.rotate(Eigen::AngleAxisd(q[next++], Eigen::Vector3d::UnitZ()));
  } else if (r.base_rot_dof == 3) {
    frame.rotate(Eigen::AngleAxisd(q[next], Eigen::Vector3d::UnitZ()) *
                 Eigen::AngleAxisd(q[next + 1], Eigen::Vector3d::UnitY()) *
                 Eigen::AngleAxisd(q[next + 2], Eigen::Vector3d::UnitX()));
    next += 3;
  }

  std::vector<OrientedBox> boxes;
  boxes.reserve(r.links.size());
  for (const LinkSpec& link : r.links) {
    frame.translate(link.attach);
    if (link.joint_axis >= 0) {
      Eigen::Vector3d axis = Eigen::Vector3d::Zero();
      axis[link.joint_axis] = 1.0;
      frame.rotate(Eigen::AngleAxisd(q[next++], axis));
    }
    OrientedBox box;
    box.center = frame * link.center;
    box.half_extents = link.half_extents;
    box.rotation = frame.rotation();
    boxes.push_back(box);
  }
  return boxes;
}

}  // namespace prmgate
