#pragma once

#include <cmath>
#include <numbers>

#include "prmgate/core/rng.hpp"
#include "prmgate/geometry/types.hpp"

namespace prmgate {

inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a + std::numbers::pi, two_pi);
  if (a < 0) a += two_pi;
  return a - std::numbers::pi;  // [-pi, pi)
}

// Normalized configuration space shared by sampling, learning, and planning.
// Translations map affinely from [0, extent] to [-1, 1]; angles divide by pi.
class ConfigSpace {
 public:
  ConfigSpace(RobotModel robot, const Eigen::Vector3d& extents)
      : robot_(std::move(robot)), extents_(extents) {}

  const RobotModel& robot() const { return robot_; }
  int dof() const { return robot_.dof; }

  double extent_for_dof(int i) const {
    // Translation DoF i corresponds to axis i (x, y[, z]).
    return extents_[i];
  }

  Configuration wrap(Configuration q) const {
    for (int i = robot_.trans_dof; i < q.size(); ++i) q[i] = wrap_angle(q[i]);
    return q;
  }

  Eigen::VectorXd normalize(const Configuration& q) const {
    Eigen::VectorXd u(q.size());
    for (int i = 0; i < q.size(); ++i) {
      if (i < robot_.trans_dof)
        u[i] = 2.0 * q[i] / extent_for_dof(i) - 1.0;
      else
        u[i] = q[i] / std::numbers::pi;
    }
    return u;
  }

  Configuration denormalize(const Eigen::VectorXd& u) const {
    Configuration q(u.size());
    for (int i = 0; i < u.size(); ++i) {
      if (i < robot_.trans_dof)
        q[i] = (u[i] + 1.0) * 0.5 * extent_for_dof(i);
      else
        q[i] = wrap_angle(u[i] * std::numbers::pi);
    }
    return q;
  }

  // Euclidean distance over normalized DoF, shortest arc for angles.
  double distance(const Configuration& a, const Configuration& b) const {
    double s = 0;
    for (int i = 0; i < a.size(); ++i) {
      double d;
      if (i < robot_.trans_dof)
        d = 2.0 * (a[i] - b[i]) / extent_for_dof(i);
      else
        d = wrap_angle(b[i] - a[i]) / std::numbers::pi;
      s += d * d;
    }
    return std::sqrt(s);
  }

  Configuration interpolate(const Configuration& a, const Configuration& b, double t) const {
    Configuration q(a.size());
    for (int i = 0; i < a.size(); ++i) {
      if (i < robot_.trans_dof)
        q[i] = a[i] + t * (b[i] - a[i]);
      else
        q[i] = wrap_angle(a[i] + t * wrap_angle(b[i] - a[i]));
    }
    return q;
  }

  Configuration sample_uniform(Rng& rng) const {
    Configuration q(dof());
    for (int i = 0; i < dof(); ++i) {
      if (i < robot_.trans_dof)
        q[i] = uniform_real(rng, 0.0, extent_for_dof(i));
      else
        q[i] = wrap_angle(uniform_real(rng, -std::numbers::pi, std::numbers::pi));
    }
    return q;
  }

 private:
  RobotModel robot_;
  Eigen::Vector3d extents_;
};

}  // namespace prmgate
