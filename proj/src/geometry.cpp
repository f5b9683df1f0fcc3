#include "uwbrp/geometry.hpp"

#include <cmath>
#include <string>

#include "uwbrp/errors.hpp"

namespace uwbrp {

AntennaLayout::AntennaLayout(double radius_m, int antenna_count)
    : radius(radius_m), count(antenna_count) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ParameterError("antenna radius must be positive and finite");
  }
  if (count < 3) {
    throw ParameterError("planar pose needs at least 3 antennas, got " + std::to_string(count));
  }
}

double AntennaLayout::antenna_angle(int k) const {
  if (k < 1 || k > count) {
    throw IndexError("antenna index " + std::to_string(k) + " outside [1, " +
                     std::to_string(count) + "]");
  }
  return angular_spacing() * (k - 1);
}

Eigen::Vector2d antenna_position(const AntennaLayout& layout, const Pose2D& pose, int k) {
  const double a = layout.antenna_angle(k) + pose.theta;
  return {pose.x + layout.radius * std::cos(a), pose.y + layout.radius * std::sin(a)};
}

double pairwise_distance(const AntennaLayout& layout, const Pose2D& pose, int i, int j) {
  const Eigen::Vector2d a = antenna_position(layout, Pose2D{}, i);
  const Eigen::Vector2d b = antenna_position(layout, pose, j);
  return (a - b).norm();
}

RangeMatrix distance_matrix(const AntennaLayout& layout, const Pose2D& pose) {
  RangeMatrix d(layout.count);
  for (int i = 1; i <= layout.count; ++i) {
    for (int j = 1; j <= layout.count; ++j) {
      d.at(i, j) = pairwise_distance(layout, pose, i, j);
    }
  }
  return d;
}

}  // namespace uwbrp
