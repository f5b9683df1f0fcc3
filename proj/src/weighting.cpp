#include "uwbrp/weighting.hpp"

#include <cmath>
#include <string>

#include "uwbrp/errors.hpp"

namespace uwbrp {

namespace {

void check_antenna(int k, int antenna_count, const char* which) {
  if (antenna_count < 1) {
    throw ParameterError("antenna count must be >= 1");
  }
  if (k < 1 || k > antenna_count) {
    throw IndexError(std::string(which) + " antenna index " + std::to_string(k) + " outside [1, " +
                     std::to_string(antenna_count) + "]");
  }
}

void check_non_degenerate(const Pose2D& pose) {
  if (pose.x == 0.0 && pose.y == 0.0) {
    throw DegenerateGeometryError("zero planar offset: bearing between robots is undefined");
  }
}

}  // namespace

WeightParams::WeightParams(double sigma_rad, double rho_rad) : sigma(sigma_rad), rho(rho_rad) {
  if (!std::isfinite(sigma) || !std::isfinite(rho) || sigma < 0.0 || rho < sigma || rho > kPi) {
    throw ParameterError("weight params must satisfy 0 <= sigma <= rho <= pi");
  }
}

double weight_primitive(double psi, const WeightParams& params) {
  const double a = std::abs(wrap_pi(psi));
  if (a >= params.rho) {
    return 1.0;
  }
  if (a <= params.sigma) {
    return 0.0;
  }
  const double u = (a - params.sigma) / (params.rho - params.sigma);
  return 0.5 - 0.5 * std::cos(kPi * u);
}

double weight_primitive_derivative(double psi, const WeightParams& params) {
  const double w = wrap_pi(psi);
  const double a = std::abs(w);
  if (a >= params.rho || a <= params.sigma) {
    return 0.0;
  }
  const double u = (a - params.sigma) / (params.rho - params.sigma);
  const double slope = 0.5 * kPi / (params.rho - params.sigma) * std::sin(kPi * u);
  return w >= 0.0 ? slope : -slope;
}

namespace detail {

double phase_A(int i, int antenna_count) {
  // A's antenna i is eclipsed when the bearing to B points away from it,
  // i.e. at mounting angle + pi. For the 4-antenna layout this reduces to
  // the (pi/2)(i + 1) shift.
  return kTwoPi / antenna_count * (i - 1) + kPi;
}

double phase_B(int j, int antenna_count) { return kTwoPi / antenna_count * (j - 1); }

PairWeight pair_weight_terms(double bearing, double theta, int i, int j,
                             const WeightParams& params, int antenna_count) {
  const double psi_a = bearing - phase_A(i, antenna_count);
  const double psi_b = theta - bearing - phase_B(j, antenna_count);

  const double wa = weight_primitive(psi_a, params);
  const double wb = weight_primitive(psi_b, params);
  const double wa_d = weight_primitive_derivative(psi_a, params);
  const double wb_d = weight_primitive_derivative(psi_b, params);

  PairWeight out;
  out.value = wa * wb;
  out.d_bearing = wa_d * wb - wa * wb_d;
  out.d_theta = wa * wb_d;
  return out;
}

}  // namespace detail

double weight_A(const Pose2D& pose, int i, const WeightParams& params, int antenna_count) {
  check_antenna(i, antenna_count, "robot A");
  check_non_degenerate(pose);
  const double bearing = std::atan2(pose.y, pose.x);
  return weight_primitive(bearing - detail::phase_A(i, antenna_count), params);
}

double weight_B(const Pose2D& pose, int j, const WeightParams& params, int antenna_count) {
  check_antenna(j, antenna_count, "robot B");
  check_non_degenerate(pose);
  const double bearing = std::atan2(pose.y, pose.x);
  return weight_primitive(pose.theta - bearing - detail::phase_B(j, antenna_count), params);
}

double weight_pair(const Pose2D& pose, int i, int j, const WeightParams& params,
                   int antenna_count) {
  return weight_A(pose, i, params, antenna_count) * weight_B(pose, j, params, antenna_count);
}

Eigen::Vector3d weight_pair_gradient(const Pose2D& pose, int i, int j, const WeightParams& params,
                                     int antenna_count) {
  check_antenna(i, antenna_count, "robot A");
  check_antenna(j, antenna_count, "robot B");
  check_non_degenerate(pose);

  const double bearing = std::atan2(pose.y, pose.x);
  const auto pw = detail::pair_weight_terms(bearing, pose.theta, i, j, params, antenna_count);

  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  if (pw.d_bearing != 0.0) {
    const double r2 = pose.x * pose.x + pose.y * pose.y;
    grad.x() = pw.d_bearing * (-pose.y / r2);
    grad.y() = pw.d_bearing * (pose.x / r2);
  }
  grad.z() = pw.d_theta;
  return grad;
}

}  // namespace uwbrp
