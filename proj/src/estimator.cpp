#include "uwbrp/estimator.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "uwbrp/errors.hpp"

namespace uwbrp {

namespace {

constexpr double kMaxTrustRadius = 1.0;
constexpr double kMinTrustRadius = 1e-14;
constexpr double kAcceptRatio = 1e-4;

void check_inputs(const RangeMatrix& zhat, const AntennaLayout& layout) {
  if (zhat.antenna_count() != layout.count) {
    throw ShapeError("measurement matrix is " + std::to_string(zhat.antenna_count()) +
                     "x" + std::to_string(zhat.antenna_count()) + ", layout has " +
                     std::to_string(layout.count) + " antennas");
  }
  for (double v : zhat.values()) {
    if (!std::isfinite(v)) {
      throw ParameterError("measurement matrix must be finite");
    }
  }
}

struct Eval {
  double f = 0.0;
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
};

// Objective, analytic gradient and Gauss-Newton Hessian approximation at
// pose parameters p = (x, y, theta). Total in p: at the exact origin the
// weighted form follows the atan2(0, 0) = 0 bearing convention, and the
// bearing partials (which scale as 1/r^2) are dropped where the weight
// slope vanishes, so no NaN can be produced on the flat band segments.
Eval eval_objective(const Eigen::Vector3d& p, const RangeMatrix& zhat,
                    const AntennaLayout& layout, const WeightParams& params, bool weighted,
                    bool with_derivatives) {
  const int n = layout.count;
  const double x = p[0];
  const double y = p[1];
  const double theta = p[2];

  // Antenna offsets for both robots.
  Eigen::Matrix2Xd a_pos(2, n);
  Eigen::Matrix2Xd b_pos(2, n);
  Eigen::Matrix2Xd b_dtheta(2, n);
  for (int k = 0; k < n; ++k) {
    const double base = layout.angular_spacing() * k;
    a_pos.col(k) = Eigen::Vector2d(layout.radius * std::cos(base), layout.radius * std::sin(base));
    const double a = base + theta;
    const double c = std::cos(a);
    const double s = std::sin(a);
    b_pos.col(k) = Eigen::Vector2d(x + layout.radius * c, y + layout.radius * s);
    b_dtheta.col(k) = Eigen::Vector2d(-layout.radius * s, layout.radius * c);
  }

  const double r2 = x * x + y * y;
  const double bearing = std::atan2(y, x);

  // Bearing gradient for the weight chain rule; left at zero for the
  // exact origin (the weight segments are flat there).
  Eigen::Vector3d bearing_grad = Eigen::Vector3d::Zero();
  if (r2 > 0.0) {
    bearing_grad[0] = -y / r2;
    bearing_grad[1] = x / r2;
  }

  Eval out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const Eigen::Vector2d delta = b_pos.col(j - 1) - a_pos.col(i - 1);
      const double d = delta.norm();
      const double res = d - zhat.at(i, j);

      double w = 1.0;
      detail::PairWeight pw;
      if (weighted) {
        pw = detail::pair_weight_terms(bearing, theta, i, j, params, n);
        w = pw.value;
      }
      out.f += w * res * res;

      if (!with_derivatives) {
        continue;
      }
      Eigen::Vector3d grad_d = Eigen::Vector3d::Zero();
      if (d > 0.0) {
        grad_d[0] = delta.x() / d;
        grad_d[1] = delta.y() / d;
        grad_d[2] = delta.dot(b_dtheta.col(j - 1)) / d;
      }
      out.g += (2.0 * w * res) * grad_d;
      out.h += (2.0 * w) * (grad_d * grad_d.transpose());
      if (weighted) {
        Eigen::Vector3d grad_w = pw.d_bearing * bearing_grad;
        grad_w[2] += pw.d_theta;
        out.g += (res * res) * grad_w;

        // The Hessian model stays Gauss-Newton; the weight terms enter
        // through the gradient only.
      }
    }
  }
  return out;
}

// Dogleg step for the model m(s) = f + g.s + s'Hs/2 within the radius.
// The Gauss-Newton Hessian is positive semidefinite; a ridge escalation
// covers the rank-deficient cases.
Eigen::Vector3d dogleg_step(const Eigen::Matrix3d& h, const Eigen::Vector3d& g, double radius) {
  Eigen::Matrix3d hr = h;
  Eigen::LLT<Eigen::Matrix3d> llt(hr);
  double ridge = 1e-12 * (1.0 + h.trace());
  for (int tries = 0; llt.info() != Eigen::Success && tries < 40; ++tries) {
    hr += ridge * Eigen::Matrix3d::Identity();
    llt.compute(hr);
    ridge *= 10.0;
  }
  const Eigen::Vector3d newton = llt.solve(-g);
  if (newton.norm() <= radius) {
    return newton;
  }

  const double g2 = g.squaredNorm();
  const double ghg = g.dot(hr * g);
  const Eigen::Vector3d cauchy = -(g2 / ghg) * g;
  const double cauchy_norm = cauchy.norm();
  if (cauchy_norm >= radius) {
    return -(radius / std::sqrt(g2)) * g;
  }

  // Second dogleg leg: ||cauchy + t (newton - cauchy)|| = radius.
  const Eigen::Vector3d leg = newton - cauchy;
  const double a = leg.squaredNorm();
  const double b = 2.0 * cauchy.dot(leg);
  const double c = cauchy_norm * cauchy_norm - radius * radius;
  const double t = (-b + std::sqrt(std::max(0.0, b * b - 4.0 * a * c))) / (2.0 * a);
  return cauchy + t * leg;
}

// True when some antenna pair coincides at this pose while its measured
// range does not vanish. ||delta|| is a descent cone there with every
// direction strictly decreasing, but the smooth gradient reports zero
// slope, so such a start point must be displaced before iterating. The
// origin start of the two-stage scheme is the canonical case: all
// diagonal pairs sit at their cone apexes.
bool at_cone_apex(const Eigen::Vector3d& p, const RangeMatrix& zhat, const AntennaLayout& layout) {
  const Pose2D pose(p[0], p[1], p[2]);
  for (int i = 1; i <= layout.count; ++i) {
    for (int j = 1; j <= layout.count; ++j) {
      const double d = pairwise_distance(layout, pose, i, j);
      if (d < 1e-12 && std::abs(zhat.at(i, j)) > 1e-12) {
        return true;
      }
    }
  }
  return false;
}

EstimateResult run_solver(const RangeMatrix& zhat, const AntennaLayout& layout, const Pose2D& x0,
                          const EstimatorConfig& config) {
  const bool weighted = uses_weighted_objective(config.variant);
  const SolverConfig& sc = config.solver;

  Eigen::Vector3d x(x0.x, x0.y, x0.theta);
  if (at_cone_apex(x, zhat, layout)) {
    x[0] += 1e-6;  // deterministic tie-break off the nonsmooth apex
  }
  Eval cur = eval_objective(x, zhat, layout, config.weight_params, weighted, true);

  EstimateResult result;
  result.objective_trace.push_back(cur.f);

  double radius = sc.initial_trust_radius;
  bool converged = false;

  for (int iter = 0; iter < sc.max_iterations; ++iter) {
    if (cur.g.norm() <= sc.gradient_tolerance) {
      converged = true;
      break;
    }
    if (radius <= sc.step_tolerance) {
      // Any further step is below the step tolerance; the iterate cannot
      // move meaningfully, which is the step-size termination criterion.
      converged = true;
      break;
    }
    if (radius < kMinTrustRadius) {
      break;  // trust region collapsed without progress
    }

    const Eigen::Vector3d step = dogleg_step(cur.h, cur.g, radius);
    const double step_norm = step.norm();
    const double predicted = -(cur.g.dot(step) + 0.5 * step.dot(cur.h * step));
    if (!(predicted > 0.0) || step_norm == 0.0) {
      radius *= 0.25;
      continue;
    }

    const Eigen::Vector3d trial = x + step;
    Eval next = eval_objective(trial, zhat, layout, config.weight_params, weighted, true);
    const double actual = cur.f - next.f;
    const double ratio = actual / predicted;

    if (ratio < 0.25) {
      radius = 0.25 * step_norm;
    } else if (ratio > 0.75 && step_norm >= 0.99 * radius) {
      radius = std::min(2.0 * radius, kMaxTrustRadius);
    }

    if (ratio > kAcceptRatio && next.f <= cur.f) {
      x = trial;
      cur = next;
      ++result.iterations;
      result.objective_trace.push_back(cur.f);
      if (step_norm <= sc.step_tolerance) {
        converged = true;
        break;
      }
    }
  }
  if (!converged && cur.g.norm() <= sc.gradient_tolerance) {
    converged = true;  // tolerance met on the final iterate
  }

  result.pose = Pose2D(x[0], x[1], wrap_pi(x[2]));
  result.objective_value = cur.f;
  result.converged = converged;
  return result;
}

}  // namespace

SolverConfig::SolverConfig(int max_iter, double gtol, double steptol, double trust0)
    : max_iterations(max_iter),
      gradient_tolerance(gtol),
      step_tolerance(steptol),
      initial_trust_radius(trust0) {
  if (max_iterations < 1) {
    throw ParameterError("max_iterations must be >= 1");
  }
  if (!(gradient_tolerance > 0.0) || !(step_tolerance > 0.0) || !(initial_trust_radius > 0.0)) {
    throw ParameterError("solver tolerances must be positive");
  }
}

double objective_unweighted(const Pose2D& pose, const RangeMatrix& zhat,
                            const AntennaLayout& layout) {
  check_inputs(zhat, layout);
  const Eigen::Vector3d p(pose.x, pose.y, pose.theta);
  return eval_objective(p, zhat, layout, WeightParams{}, false, false).f;
}

double objective_weighted(const Pose2D& pose, const RangeMatrix& zhat, const AntennaLayout& layout,
                          const WeightParams& params) {
  check_inputs(zhat, layout);
  if (pose.x == 0.0 && pose.y == 0.0) {
    throw DegenerateGeometryError("weighted objective undefined at zero planar offset");
  }
  const Eigen::Vector3d p(pose.x, pose.y, pose.theta);
  return eval_objective(p, zhat, layout, params, true, false).f;
}

Eigen::Vector3d objective_gradient(const Pose2D& pose, const RangeMatrix& zhat,
                                   const AntennaLayout& layout, const WeightParams& params,
                                   Variant variant) {
  check_inputs(zhat, layout);
  const bool weighted = uses_weighted_objective(variant);
  if (weighted && pose.x == 0.0 && pose.y == 0.0) {
    throw DegenerateGeometryError("weighted objective undefined at zero planar offset");
  }
  const Eigen::Vector3d p(pose.x, pose.y, pose.theta);
  return eval_objective(p, zhat, layout, params, weighted, true).g;
}

EstimateResult solve(const RangeMatrix& zhat, const AntennaLayout& layout, const Pose2D& x0,
                     const EstimatorConfig& config) {
  check_inputs(zhat, layout);
  return run_solver(zhat, layout, x0, config);
}

EstimateResult solve_two_stage(const RangeMatrix& zhat, const AntennaLayout& layout,
                               const EstimatorConfig& config) {
  check_inputs(zhat, layout);

  EstimatorConfig stage1 = config;
  stage1.variant = Variant::Unweighted;
  EstimateResult first = run_solver(zhat, layout, Pose2D{}, stage1);
  first.stage1_pose = first.pose;
  if (!first.converged || !uses_weighted_objective(config.variant)) {
    return first;
  }

  EstimateResult second = run_solver(zhat, layout, first.pose, config);
  second.stage1_pose = first.pose;
  return second;
}

}  // namespace uwbrp
