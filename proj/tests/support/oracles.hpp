// Test-side oracles, kept independent of the library code paths they check.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "prmgate/core/rng.hpp"
#include "prmgate/geometry/types.hpp"
#include "prmgate/nn/network.hpp"

namespace oracles {

using prmgate::Configuration;
using prmgate::RobotModel;
using prmgate::Workspace;

// ---------------------------------------------------------------------------
// Forward kinematics re-derived with explicit 4x4 homogeneous transforms.

inline Eigen::Matrix4d hom_translate(const Eigen::Vector3d& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.block<3, 1>(0, 3) = t;
  return m;
}

inline Eigen::Matrix4d hom_rotate(int axis, double angle) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  const double c = std::cos(angle), s = std::sin(angle);
  const int a = (axis + 1) % 3, b = (axis + 2) % 3;
  m(a, a) = c;
  m(a, b) = -s;
  m(b, a) = s;
  m(b, b) = c;
  return m;
}

struct HomBox {
  Eigen::Vector3d center;
  Eigen::Matrix3d rotation;
};

inline std::vector<HomBox> homogeneous_fk(const RobotModel& r, const Configuration& q) {
  Eigen::Vector3d t(q[0], q.size() > 1 ? q[1] : 0.0, r.base_z);
  if (r.trans_dof == 3) t.z() = q[2];
  Eigen::Matrix4d frame = hom_translate(t);
  int next = r.trans_dof;
  if (r.base_rot_dof == 1) frame *= hom_rotate(2, q[next++]);
  if (r.base_rot_dof == 3) {
    frame *= hom_rotate(2, q[next]) * hom_rotate(1, q[next + 1]) * hom_rotate(0, q[next + 2]);
    next += 3;
  }
  std::vector<HomBox> out;
  for (const auto& link : r.links) {
    frame *= hom_translate(link.attach);
    if (link.joint_axis >= 0) frame *= hom_rotate(link.joint_axis, q[next++]);
    Eigen::Vector4d c;
    c << link.center, 1.0;
    out.push_back({(frame * c).head<3>(), frame.block<3, 3>(0, 0)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force collision oracle: point containment over samples drawn inside
// each link box, with margins that make near-touching cases skippable.

inline double point_aabb_signed_distance(const Eigen::Vector3d& p,
                                         const prmgate::AxisAlignedBox& b, int dim) {
  // Positive outside, negative inside (depth to the nearest face).
  double outside_sq = 0;
  double inside = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim; ++a) {
    const double lo = b.min[a] - p[a], hi = p[a] - b.max[a];
    const double d = std::max(lo, hi);
    if (d > 0)
      outside_sq += d * d;
    else
      inside = std::min(inside, -d);
  }
  return outside_sq > 0 ? std::sqrt(outside_sq) : -inside;
}

struct BruteForceResult {
  bool collides = false;
  // Depth of the deepest sampled point when colliding; smallest sampled
  // distance to an obstacle (or the workspace boundary) when free.
  double penetration = 0;
  double clearance = std::numeric_limits<double>::infinity();
};

inline BruteForceResult brute_force_collide(const RobotModel& robot, const Configuration& q,
                                            const Workspace& w, int points_per_link,
                                            prmgate::Rng& rng) {
  BruteForceResult result;
  const int dim = w.dim();
  const auto boxes = homogeneous_fk(robot, q);
  for (std::size_t li = 0; li < boxes.size(); ++li) {
    const auto& link = robot.links[li];
    const auto& pose = boxes[li];
    for (int i = 0; i < points_per_link; ++i) {
      Eigen::Vector3d local;
      if (i < 8 && dim == 3) {
        // corners first, then random interior points
        local = Eigen::Vector3d((i & 1) ? 1 : -1, (i & 2) ? 1 : -1, (i & 4) ? 1 : -1)
                    .cwiseProduct(link.half_extents);
      } else if (i < 4 && dim == 2) {
        local = Eigen::Vector3d((i & 1) ? 1 : -1, (i & 2) ? 1 : -1, 0)
                    .cwiseProduct(link.half_extents);
      } else {
        for (int a = 0; a < 3; ++a)
          local[a] = prmgate::uniform_real(rng, -link.half_extents[a], link.half_extents[a]);
      }
      const Eigen::Vector3d p = pose.center + pose.rotation * local;

      double best = std::numeric_limits<double>::infinity();
      for (const auto& obs : w.obstacles) {
        // AABB prefilter keeps the densely cluttered cases tractable
        bool nearby = true;
        for (int a = 0; a < dim && nearby; ++a)
          if (p[a] < obs.min[a] - result.clearance - 1.0 ||
              p[a] > obs.max[a] + result.clearance + 1.0)
            nearby = false;
        if (!nearby) continue;
        best = std::min(best, point_aabb_signed_distance(p, obs, dim));
      }
      // out-of-bounds depth counts as penetration too
      double bounds = std::numeric_limits<double>::infinity();
      for (int a = 0; a < dim; ++a)
        bounds = std::min(bounds, std::min(p[a] - 0.0, w.extents[a] - p[a]));
      best = std::min(best, bounds);

      if (best < 0) {
        result.collides = true;
        result.penetration = std::max(result.penetration, -best);
      } else {
        result.clearance = std::min(result.clearance, best);
      }
    }
  }
  return result;
}

// Independent separation certificate: max projection gap over candidate axes,
// computed from explicit corner projections. A positive gap bounds the true
// distance from below.
inline double projection_gap(const HomBox& pose, const Eigen::Vector3d& half,
                             const prmgate::AxisAlignedBox& obs, int dim) {
  std::vector<Eigen::Vector3d> axes;
  for (int a = 0; a < dim; ++a) {
    axes.emplace_back(Eigen::Vector3d::Unit(a));
    axes.emplace_back(pose.rotation.col(a));
  }
  if (dim == 3)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Eigen::Vector3d cr = Eigen::Vector3d::Unit(a).cross(Eigen::Vector3d(pose.rotation.col(b)));
        if (cr.norm() > 1e-9) axes.push_back(cr.normalized());
      }

  const int corners = dim == 2 ? 4 : 8;
  double best_gap = -std::numeric_limits<double>::infinity();
  for (const auto& axis : axes) {
    double amin = std::numeric_limits<double>::infinity(), amax = -amin;
    for (int i = 0; i < corners; ++i) {
      Eigen::Vector3d local((i & 1) ? half.x() : -half.x(), (i & 2) ? half.y() : -half.y(),
                            dim == 3 ? ((i & 4) ? half.z() : -half.z()) : 0.0);
      const double v = axis.dot(pose.center + pose.rotation * local);
      amin = std::min(amin, v);
      amax = std::max(amax, v);
    }
    double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin;
    for (int i = 0; i < corners; ++i) {
      Eigen::Vector3d c(((i & 1) ? obs.max.x() : obs.min.x()),
                        ((i & 2) ? obs.max.y() : obs.min.y()),
                        dim == 3 ? ((i & 4) ? obs.max.z() : obs.min.z()) : 0.0);
      const double v = axis.dot(c);
      bmin = std::min(bmin, v);
      bmax = std::max(bmax, v);
    }
    best_gap = std::max(best_gap, std::max(bmin - amax, amin - bmax));
  }
  return best_gap;
}

// Smallest certified separation of the whole robot from all obstacles and the
// boundary; positive only when every pair is certified apart.
inline double certified_separation(const RobotModel& robot, const Configuration& q,
                                   const Workspace& w) {
  const int dim = w.dim();
  const auto boxes = homogeneous_fk(robot, q);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t li = 0; li < boxes.size(); ++li) {
    for (const auto& obs : w.obstacles)
      worst = std::min(worst, projection_gap(boxes[li], robot.links[li].half_extents, obs, dim));
    // boundary clearance from corners
    const int corners = dim == 2 ? 4 : 8;
    const auto& half = robot.links[li].half_extents;
    for (int i = 0; i < corners; ++i) {
      Eigen::Vector3d local((i & 1) ? half.x() : -half.x(), (i & 2) ? half.y() : -half.y(),
                            dim == 3 ? ((i & 4) ? half.z() : -half.z()) : 0.0);
      const Eigen::Vector3d p = boxes[li].center + boxes[li].rotation * local;
      for (int a = 0; a < dim; ++a)
        worst = std::min(worst, std::min(p[a] - 0.0, w.extents[a] - p[a]));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Central finite-difference gradients for an arbitrary scalar loss of the
// network parameters.

inline double max_relative_gradient_error(
    prmgate::NetworkParams& net, const std::function<double()>& loss,
    const prmgate::Gradients& analytic, double h = 1e-5) {
  double worst = 0;
  auto check = [&](double& param, double grad) {
    const double saved = param;
    param = saved + h;
    const double up = loss();
    param = saved - h;
    const double down = loss();
    param = saved;
    const double fd = (up - down) / (2 * h);
    const double denom = std::max({std::abs(fd), std::abs(grad), 1e-8});
    worst = std::max(worst, std::abs(fd - grad) / denom);
  };
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto& layer = net.layers[l];
    for (Eigen::Index i = 0; i < layer.W.size(); ++i)
      check(layer.W.data()[i], analytic.dW[l].data()[i]);
    for (Eigen::Index i = 0; i < layer.b.size(); ++i)
      check(layer.b.data()[i], analytic.db[l].data()[i]);
    if (layer.activation) check(layer.slope, analytic.dslope[l]);
  }
  return worst;
}

}  // namespace oracles
