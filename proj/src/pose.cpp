#include "uwbrp/pose.hpp"

#include "uwbrp/errors.hpp"

namespace uwbrp {

Pose2D::Pose2D(double px, double py, double heading) : x(px), y(py), theta(wrap_pi(heading)) {
  if (!std::isfinite(px) || !std::isfinite(py) || !std::isfinite(heading)) {
    throw ParameterError("Pose2D requires finite x, y, theta");
  }
}

Pose2D compose(const Pose2D& a, const Pose2D& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return {a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y, a.theta + b.theta};
}

Pose2D inverse(const Pose2D& a) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return {-(c * a.x + s * a.y), -(-s * a.x + c * a.y), -a.theta};
}

Pose2D relative_pose(const Pose2D& a, const Pose2D& b) { return compose(inverse(a), b); }

}  // namespace uwbrp
