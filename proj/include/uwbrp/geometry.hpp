#pragma once

#include <Eigen/Core>

#include "uwbrp/pose.hpp"
#include "uwbrp/range_matrix.hpp"

namespace uwbrp {

/// Circular antenna layout: `count` antennas spaced 2*pi/count apart,
/// starting on the body x-axis, mounted `radius` meters from the robot
/// center. Antenna indices are 1-based throughout. Both robots carry the
/// same layout. Construct through the validating constructor; mutating
/// the fields directly bypasses the invariants (radius > 0, count >= 3
/// for planar observability).
struct AntennaLayout {
  double radius = 0.35;
  int count = 4;

  AntennaLayout() = default;
  AntennaLayout(double radius_m, int antenna_count);

  // Body-frame mounting angle of antenna k.
  double antenna_angle(int k) const;

  double angular_spacing() const { return kTwoPi / count; }
};

// World position of antenna k of a robot at `pose` (robot A sits at the
// identity pose by convention).
Eigen::Vector2d antenna_position(const AntennaLayout& layout, const Pose2D& pose, int k);

// Distance between robot A's antenna i (A at the identity pose) and robot
// B's antenna j (B at `pose`).
double pairwise_distance(const AntennaLayout& layout, const Pose2D& pose, int i, int j);

// All N^2 pairwise distances; entry (i, j) is pairwise_distance(i, j).
RangeMatrix distance_matrix(const AntennaLayout& layout, const Pose2D& pose);

}  // namespace uwbrp
