#pragma once

#include <Eigen/Core>

#include "uwbrp/angles.hpp"
#include "uwbrp/pose.hpp"

namespace uwbrp {

/// Stop-band / pass-band angles of the obstruction weight primitive,
/// related by 0 <= sigma <= rho <= pi. Config files carry degrees; this
/// struct is radians.
struct WeightParams {
  double sigma = deg2rad(30.0);
  double rho = deg2rad(90.0);

  WeightParams() = default;
  WeightParams(double sigma_rad, double rho_rad);
};

// 2*pi periodic, even, continuously differentiable band-stop weight:
// 0 for |psi| <= sigma, 1 for |psi| >= rho, raised-cosine in between.
// Boundary points belong to the closed stop/pass bands; when sigma == rho
// the pass-band case wins at the single shared point (hard step).
double weight_primitive(double psi, const WeightParams& params);

// dw/dpsi of the primitive; zero on both flat bands, cosine slope on the
// transitions, continuous everywhere.
double weight_primitive_derivative(double psi, const WeightParams& params);

// Weight devaluing measurements that involve robot A's antenna i, as a
// function of the relative pose of robot B. Throws DegenerateGeometryError
// when x = y = 0 (bearing undefined).
double weight_A(const Pose2D& pose, int i, const WeightParams& params, int antenna_count = 4);

// Same for robot B's antenna j.
double weight_B(const Pose2D& pose, int j, const WeightParams& params, int antenna_count = 4);

// Combined per-pair weight w_A(i) * w_B(j) in [0, 1].
double weight_pair(const Pose2D& pose, int i, int j, const WeightParams& params,
                   int antenna_count = 4);

// Analytic gradient of weight_pair with respect to (x, y, theta).
Eigen::Vector3d weight_pair_gradient(const Pose2D& pose, int i, int j, const WeightParams& params,
                                     int antenna_count = 4);

namespace detail {

// Pair weight and its partials with respect to the bearing atan2(y, x) and
// the relative heading. Total on all inputs: callers that cannot rule out
// the degenerate origin get the atan2(0, 0) = 0 convention.
struct PairWeight {
  double value = 0.0;
  double d_bearing = 0.0;
  double d_theta = 0.0;
};

PairWeight pair_weight_terms(double bearing, double theta, int i, int j,
                             const WeightParams& params, int antenna_count);

// Phase offsets applied to the bearing/heading before the primitive.
double phase_A(int i, int antenna_count);
double phase_B(int j, int antenna_count);

}  // namespace detail

}  // namespace uwbrp
