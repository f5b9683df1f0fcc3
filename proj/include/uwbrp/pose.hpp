#pragma once

#include <Eigen/Core>
#include <cmath>

#include "uwbrp/angles.hpp"

namespace uwbrp {

/// Planar pose [x, y, theta]. theta is kept wrapped to (-pi, pi];
/// the constructor wraps and rejects non-finite values.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose2D() = default;
  Pose2D(double px, double py, double heading);

  Eigen::Vector2d position() const { return {x, y}; }

  // Euclidean norm of the planar offset, ignoring heading.
  double planar_norm() const { return std::hypot(x, y); }
};

// Rigid 2D composition a * b (apply b in a's frame).
Pose2D compose(const Pose2D& a, const Pose2D& b);

Pose2D inverse(const Pose2D& a);

// Pose of `b` expressed in `a`'s body frame: inverse(a) * b.
Pose2D relative_pose(const Pose2D& a, const Pose2D& b);

}  // namespace uwbrp
