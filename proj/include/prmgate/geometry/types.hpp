#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prmgate {

enum class WorkspaceClass { TwoDS, ThreeDO, ThreeDC };

inline const char* to_string(WorkspaceClass c) {
  switch (c) {
    case WorkspaceClass::TwoDS: return "2DS";
    case WorkspaceClass::ThreeDO: return "3DO";
    case WorkspaceClass::ThreeDC: return "3DC";
  }
  return "?";
}

inline WorkspaceClass workspace_class_from_string(const std::string& s) {
  if (s == "2DS") return WorkspaceClass::TwoDS;
  if (s == "3DO") return WorkspaceClass::ThreeDO;
  if (s == "3DC") return WorkspaceClass::ThreeDC;
  throw std::invalid_argument("unknown workspace class: " + s);
}

inline int workspace_dim(WorkspaceClass c) {
  return c == WorkspaceClass::TwoDS ? 2 : 3;
}

struct AxisAlignedBox {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  // Closed containment: boundary points count as inside.
  bool contains(const Eigen::Vector3d& p, int dim) const {
    for (int a = 0; a < dim; ++a)
      if (p[a] < min[a] || p[a] > max[a]) return false;
    return true;
  }

  Eigen::Vector3d center() const { return 0.5 * (min + max); }
  Eigen::Vector3d half_extents() const { return 0.5 * (max - min); }
};

struct Workspace {
  WorkspaceClass cls = WorkspaceClass::TwoDS;
  Eigen::Vector3d extents = Eigen::Vector3d::Zero();  // z unused in 2D
  std::vector<AxisAlignedBox> obstacles;
  std::uint64_t seed = 0;

  int dim() const { return workspace_dim(cls); }
};

// Default per-class extents; 3DO also supports the reduced 21x21x6 desk grid.
inline Eigen::Vector3d default_extents(WorkspaceClass c) {
  switch (c) {
    case WorkspaceClass::TwoDS: return {31, 31, 0};
    case WorkspaceClass::ThreeDO: return {41, 41, 6};
    case WorkspaceClass::ThreeDC: return {11, 11, 11};
  }
  return Eigen::Vector3d::Zero();
}

// Flat occupancy grid with values in {-1, +1}; index = x + nx*(y + ny*z).
struct OccupancyGrid {
  std::array<int, 3> dims = {0, 0, 1};  // nz == 1 for 2D grids
  int dim = 2;
  std::vector<float> values;

  std::size_t size() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(int x, int y, int z = 0) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims[1]) * z);
  }
  float at(int x, int y, int z = 0) const { return values[index(x, y, z)]; }

  Eigen::VectorXd as_vector() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
    return v;
  }
};

struct OrientedBox {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d half_extents = Eigen::Vector3d::Zero();  // z == 0 in 2D
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();

  Eigen::Vector3d corner(int i) const {
    Eigen::Vector3d s((i & 1) ? half_extents.x() : -half_extents.x(),
                      (i & 2) ? half_extents.y() : -half_extents.y(),
                      (i & 4) ? half_extents.z() : -half_extents.z());
    return center + rotation * s;
  }
};

using Configuration = Eigen::VectorXd;

enum class RobotKind { Point2D, BoxChain7, BoxChain9, Office8 };

struct LinkSpec {
  Eigen::Vector3d half_extents;
  Eigen::Vector3d attach;       // joint/attachment point in the parent frame
  Eigen::Vector3d center;       // box center in the link's own frame
  int joint_axis = -1;          // -1 rigid, 0 = x, 1 = y, 2 = z
};

struct RobotModel {
  RobotKind kind = RobotKind::Point2D;
  std::string name;
  int dof = 0;
  int trans_dof = 0;      // leading translation entries of the configuration
  int base_rot_dof = 0;   // 0 none, 1 yaw, 3 intrinsic Z-Y-X Euler
  double base_z = 0.0;    // fixed base height when z is not a DoF
  std::vector<LinkSpec> links;

  int joint_count() const { return dof - trans_dof - base_rot_dof; }
  bool is_angle_dof(int i) const { return i >= trans_dof; }

  static RobotModel point2d();
  static RobotModel box_chain7();
  static RobotModel box_chain9();
  static RobotModel office8();
  static RobotModel from_name(const std::string& name);
};

inline RobotModel RobotModel::point2d() {
  RobotModel r;
  r.kind = RobotKind::Point2D;
  r.name = "point2d";
  r.dof = 2;
  r.trans_dof = 2;
  r.base_rot_dof = 0;
  r.links.push_back({{0.25, 0.25, 0.0}, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), -1});
  return r;
}

inline RobotModel RobotModel::box_chain7() {
  RobotModel r;
  r.kind = RobotKind::BoxChain7;
  r.name = "chain7";
  r.dof = 7;
  r.trans_dof = 3;
  r.base_rot_dof = 3;
  const Eigen::Vector3d big(0.2, 0.05, 0.05);
  // Two big links joined by one pitch joint at the first link's distal end.
  r.links.push_back({big, {0, 0, 0}, {0.2, 0, 0}, -1});
  r.links.push_back({big, {0.4, 0, 0}, {0.2, 0, 0}, 1});
  return r;
}

inline RobotModel RobotModel::box_chain9() {
  RobotModel r;
  r.kind = RobotKind::BoxChain9;
  r.name = "chain9";
  r.dof = 9;
  r.trans_dof = 3;
  r.base_rot_dof = 3;
  const Eigen::Vector3d big(0.2, 0.05, 0.05);
  const Eigen::Vector3d small(0.05, 0.05, 0.05);
  // big-small-big-small chain; joint axes pitch, yaw, pitch.
  r.links.push_back({big, {0, 0, 0}, {0.2, 0, 0}, -1});
  r.links.push_back({small, {0.4, 0, 0}, {0.05, 0, 0}, 1});
  r.links.push_back({big, {0.1, 0, 0}, {0.2, 0, 0}, 2});
  r.links.push_back({small, {0.4, 0, 0}, {0.05, 0, 0}, 1});
  return r;
}

inline RobotModel RobotModel::office8() {
  RobotModel r;
  r.kind = RobotKind::Office8;
  r.name = "office8";
  r.dof = 8;
  r.trans_dof = 2;
  r.base_rot_dof = 1;
  r.base_z = 0.25;
  const Eigen::Vector3d arm(0.2, 0.075, 0.075);
  // 1.5x1.0x0.5 base driving on the floor plus a 5-link arm mounted on top,
  // joints alternating yaw/pitch.
  r.links.push_back({{0.75, 0.5, 0.25}, {0, 0, 0}, {0, 0, 0}, -1});
  r.links.push_back({arm, {0, 0, 0.25}, {0.2, 0, 0}, 2});
  r.links.push_back({arm, {0.4, 0, 0}, {0.2, 0, 0}, 1});
  r.links.push_back({arm, {0.4, 0, 0}, {0.2, 0, 0}, 2});
  r.links.push_back({arm, {0.4, 0, 0}, {0.2, 0, 0}, 1});
  r.links.push_back({arm, {0.4, 0, 0}, {0.2, 0, 0}, 2});
  return r;
}

inline RobotModel RobotModel::from_name(const std::string& name) {
  if (name == "point2d") return point2d();
  if (name == "chain7") return box_chain7();
  if (name == "chain9") return box_chain9();
  if (name == "office8") return office8();
  throw std::invalid_argument("unknown robot: " + name);
}

}  // namespace prmgate
