#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "uwbrp/calibration_table.hpp"
#include "uwbrp/geometry.hpp"
#include "uwbrp/pose.hpp"
#include "uwbrp/range_matrix.hpp"
#include "uwbrp/rng.hpp"
#include "uwbrp/weighting.hpp"

namespace uwbrp {

// Kinematic envelope of the simulated ground robots. The nominal yaw limit
// is 1 rad/s; validation allows 1.05 rad/s so the stock 60 deg/s rotation
// profiles remain representable.
inline constexpr double kMaxSpeed = 1.0;        // m/s
inline constexpr double kMaxYawRate = 1.05;     // rad/s

/// Additive range corruption: z = d + mu_ij + N(0, sigma) + extra * (1 - w_ij),
/// where w_ij is evaluated at the true relative pose, so the inflation is
/// maximal exactly where a pair is fully eclipsed.
struct NoiseModel {
  double gaussian_sigma = 0.0;
  CalibrationTable bias{4};
  double obstruction_extra_bias = 0.0;
  WeightParams obstruction_params{};
  std::uint64_t seed = 0;

  // No corruption at all; ranges equal true distances.
  static NoiseModel none(int antenna_count = 4);

  // Pure N(0, sigma) range noise, zero bias, no obstruction. sigma = 0.2
  // matches the initialization benchmark protocol.
  static NoiseModel gaussian_only(double sigma, int antenna_count = 4);

  // Biases measured on the reference robot pair, 0.41 m obstruction
  // increment, sigma = 0.2.
  static NoiseModel hardware_like();
};

// Per-pair biases measured on the reference hardware (4x4).
const CalibrationTable& reference_bias_table();

// Ground-truth pose for one benchmark trial: x, y ~ U[-5, 5] rejected
// until ||(x, y)|| >= 1, theta ~ U[0, 2*pi).
Pose2D sample_uniform_pose(Rng& rng, double half_extent = 5.0, double min_planar_norm = 1.0);

// One noisy N^2 range snapshot for the given relative pose. Draws exactly
// antenna_count^2 normals in row-major (i, j) order when sigma > 0.
RangeMatrix synth_ranges(const Pose2D& pose, const AntennaLayout& layout, const NoiseModel& noise,
                         Rng& rng);

struct TimedPose {
  double t = 0.0;
  Pose2D pose{};
};

/// Trajectory of the moving robot (robot A stays at the identity pose for
/// every kind here). Sampled at rate_hz with the endpoint included.
struct TrajectorySpec {
  enum class Kind { StaticPose, RotateInPlace, Circle, Box, Waypoints };

  Kind kind = Kind::StaticPose;
  double rate_hz = 50.0;
  double duration = 0.0;  // StaticPose; RotateInPlace when revolutions == 0

  Pose2D start{3.0, 0.0, 0.0};  // StaticPose / RotateInPlace anchor

  // RotateInPlace and in-place corner turns; signed, CCW positive.
  double angular_speed = deg2rad(60.0);
  double revolutions = 0.0;  // RotateInPlace convenience; overrides duration

  double speed = 1.0;  // path speed for Circle / Box / Waypoints

  double radius = 3.0;     // Circle, centered on robot A
  bool clockwise = false;  // Circle direction

  double width = 8.0;   // Box extents, centered on robot A
  double height = 6.0;

  std::vector<Eigen::Vector2d> waypoints;  // straight legs, in-place turns
};

// Pose stream honoring the kinematic envelope; ParameterError when the
// requested profile needs speeds or yaw rates beyond it.
std::vector<TimedPose> generate_trajectory(const TrajectorySpec& spec);

// Closed two-lobe limacon polyline approximating the hand-driven bean
// path, usable as TrajectorySpec waypoints.
std::vector<Eigen::Vector2d> kidney_bean_waypoints(double center_x = 3.5, double scale = 1.5,
                                                   int points = 180);

}  // namespace uwbrp
