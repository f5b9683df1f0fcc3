#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "uwbrp/geometry.hpp"
#include "uwbrp/pose.hpp"
#include "uwbrp/range_matrix.hpp"
#include "uwbrp/variant.hpp"
#include "uwbrp/weighting.hpp"

namespace uwbrp {

struct SolverConfig {
  int max_iterations = 200;
  double gradient_tolerance = 1e-8;
  double step_tolerance = 1e-10;
  double initial_trust_radius = 1.0;

  SolverConfig() = default;
  SolverConfig(int max_iter, double gtol, double steptol, double trust0);
};

struct EstimatorConfig {
  Variant variant = Variant::Weighted;
  WeightParams weight_params{};
  int window = 50;  // measurement window fed by dataset replay
  SolverConfig solver{};
};

struct EstimateResult {
  Pose2D pose{};
  double objective_value = 0.0;
  bool converged = false;
  int iterations = 0;  // accepted steps
  std::optional<Pose2D> stage1_pose;  // set iff a two-stage solve produced this
  std::vector<double> objective_trace;  // objective after each accepted step, starting at x0
};

// Sum of squared range residuals over all N^2 pairs.
double objective_unweighted(const Pose2D& pose, const RangeMatrix& zhat,
                            const AntennaLayout& layout);

// Residuals weighted by the pose-dependent obstruction weights. Throws
// DegenerateGeometryError at zero planar offset.
double objective_weighted(const Pose2D& pose, const RangeMatrix& zhat, const AntennaLayout& layout,
                          const WeightParams& params);

// Analytic gradient of the variant's objective with respect to (x, y,
// theta); the weighted form includes the weight-gradient product terms.
Eigen::Vector3d objective_gradient(const Pose2D& pose, const RangeMatrix& zhat,
                                   const AntennaLayout& layout, const WeightParams& params,
                                   Variant variant);

// Local minimization from x0 with a dogleg trust-region method using the
// analytic gradient and a Gauss-Newton Hessian approximation. Accepted
// steps are monotone non-increasing in the objective; theta is free during
// iteration and wrapped on output. Non-convergence within max_iterations
// is reported in-band via converged = false.
EstimateResult solve(const RangeMatrix& zhat, const AntennaLayout& layout, const Pose2D& x0,
                     const EstimatorConfig& config);

// Two-stage initialization: stage 1 minimizes the unweighted objective
// from the origin; stage 2 minimizes the configured variant's objective
// from that result. Stage-1 non-convergence skips stage 2.
EstimateResult solve_two_stage(const RangeMatrix& zhat, const AntennaLayout& layout,
                               const EstimatorConfig& config);

}  // namespace uwbrp
