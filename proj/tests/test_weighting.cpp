#include <doctest.h>

#include <cmath>
#include <set>

#include "uwbrp/errors.hpp"
#include "uwbrp/rng.hpp"
#include "uwbrp/weighting.hpp"

using namespace uwbrp;

namespace {

// The two transition branches written out exactly as piecewise cosine
// segments, used as an independent oracle for the implementation.
double branch_oracle(double psi, const WeightParams& p) {
  if (p.rho <= std::abs(psi) && std::abs(psi) <= kPi) {
    return 1.0;
  }
  if (-p.rho < psi && psi < -p.sigma) {
    return 0.5 * std::cos(kPi * (psi + p.rho) / (p.rho - p.sigma)) + 0.5;
  }
  if (p.sigma < psi && psi < p.rho) {
    return 0.5 * std::cos(kPi * (psi - p.sigma) / (p.rho - p.sigma) + kPi) + 0.5;
  }
  return 0.0;
}

double fd_derivative(double psi, const WeightParams& p, double h = 1e-7) {
  return (weight_primitive(psi + h, p) - weight_primitive(psi - h, p)) / (2 * h);
}

}  // namespace

TEST_CASE("weight params validation and defaults") {
  const WeightParams def;
  CHECK(def.sigma == doctest::Approx(deg2rad(30)));
  CHECK(def.rho == doctest::Approx(deg2rad(90)));
  CHECK_NOTHROW(WeightParams(0.0, 0.0));
  CHECK_NOTHROW(WeightParams(0.1, 0.1));
  CHECK_NOTHROW(WeightParams(0.0, kPi));
  CHECK_THROWS_AS(WeightParams(-0.1, 1.0), ParameterError);
  CHECK_THROWS_AS(WeightParams(1.0, 0.5), ParameterError);
  CHECK_THROWS_AS(WeightParams(0.5, 3.5), ParameterError);
}

TEST_CASE("primitive hits the anchor values") {
  const WeightParams p;
  CHECK(weight_primitive(0.0, p) == 0.0);
  CHECK(weight_primitive(kPi, p) == 1.0);
  CHECK(weight_primitive(deg2rad(60), p) == doctest::Approx(0.5));
  CHECK(weight_primitive(deg2rad(60) + kTwoPi, p) == doctest::Approx(0.5));
  // Boundary points belong to the closed bands.
  CHECK(weight_primitive(p.sigma, p) == 0.0);
  CHECK(weight_primitive(p.rho, p) == 1.0);
  CHECK(weight_primitive(-p.sigma, p) == 0.0);
  CHECK(weight_primitive(-p.rho, p) == 1.0);
}

TEST_CASE("primitive equals the verbatim branch forms") {
  const WeightParams configs[] = {WeightParams{}, WeightParams(deg2rad(10), deg2rad(170)),
                                  WeightParams(deg2rad(45), deg2rad(50))};
  for (const auto& p : configs) {
    for (int k = -2000; k <= 2000; ++k) {
      const double psi = k * (kPi / 2000.0);
      CHECK(weight_primitive(psi, p) == doctest::Approx(branch_oracle(psi, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("primitive range, evenness, periodicity, monotone transition") {
  const WeightParams p;
  double prev = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double psi = -kPi + kTwoPi * k / 20000.0;
    const double w = weight_primitive(psi, p);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    CHECK(w == weight_primitive(-psi, p));
    // Shifted arguments are not exactly representable; compare to ulp scale.
    CHECK(w == doctest::Approx(weight_primitive(psi + kTwoPi, p)).epsilon(1e-12));
    CHECK(w == doctest::Approx(weight_primitive(psi - 3 * kTwoPi, p)).epsilon(1e-12));
    if (psi >= p.sigma && psi <= p.rho) {
      if (psi > p.sigma) {
        CHECK(w >= prev);
      }
      prev = w;
    }
  }
}

TEST_CASE("continuity at the band boundaries") {
  const WeightParams p;
  const double eps = 1e-10;
  for (double at : {p.sigma, p.rho, -p.sigma, -p.rho}) {
    const double here = weight_primitive(at, p);
    CHECK(std::abs(weight_primitive(at + eps, p) - here) <= 1e-9);
    CHECK(std::abs(weight_primitive(at - eps, p) - here) <= 1e-9);
  }
}

TEST_CASE("sigma == rho degenerates to a hard step with pass-band boundary") {
  const WeightParams p(deg2rad(45), deg2rad(45));
  CHECK(weight_primitive(deg2rad(44.9), p) == 0.0);
  CHECK(weight_primitive(deg2rad(45), p) == 1.0);
  CHECK(weight_primitive(deg2rad(45.1), p) == 1.0);
}

TEST_CASE("primitive derivative matches finite differences") {
  const WeightParams p;
  for (int k = 0; k <= 4000; ++k) {
    const double psi = -kPi + kTwoPi * k / 4000.0;
    const double analytic = weight_primitive_derivative(psi, p);
    const double numeric = fd_derivative(psi, p);
    CHECK(analytic == doctest::Approx(numeric).epsilon(1e-4).scale(1.0));
  }
  CHECK(weight_primitive_derivative(p.sigma, p) == 0.0);
  CHECK(weight_primitive_derivative(p.rho, p) == 0.0);
}

TEST_CASE("robot A weights at reference poses") {
  const WeightParams p;
  const Pose2D pose(3, -1, 0);
  CHECK(weight_A(pose, 3, p) == 0.0);
  CHECK(weight_A(pose, 1, p) == 1.0);
  CHECK(weight_A(Pose2D(1, 0, 0), 3, p) == 0.0);
  CHECK_THROWS_AS(weight_A(Pose2D(0, 0, 1.0), 1, p), DegenerateGeometryError);
  CHECK_THROWS_AS(weight_A(pose, 0, p), IndexError);
  CHECK_THROWS_AS(weight_A(pose, 5, p), IndexError);
}

TEST_CASE("robot B weights at reference poses") {
  const WeightParams p;
  const Pose2D pose(3, -1, deg2rad(100));
  CHECK(weight_B(pose, 1, p) == 1.0);
  CHECK(weight_B(pose, 2, p) == 0.0);
  const double w3 = weight_B(pose, 3, p);
  CHECK(w3 > 0.0);
  CHECK(w3 < 1.0);
  CHECK(weight_B(Pose2D(1, 0, 0), 1, p) == 0.0);
  CHECK_THROWS_AS(weight_B(Pose2D(0, 0, 0), 1, p), DegenerateGeometryError);
}

TEST_CASE("pair weight is the product of the factors") {
  const WeightParams p;
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    Pose2D pose(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-kPi, kPi));
    if (pose.planar_norm() < 1e-6) {
      continue;
    }
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        const double w = weight_pair(pose, i, j, p);
        CHECK(w == doctest::Approx(weight_A(pose, i, p) * weight_B(pose, j, p)));
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
        if (weight_A(pose, i, p) == 0.0) {
          CHECK(w == 0.0);
        }
      }
    }
  }
}

TEST_CASE("pair weight gradient vanishes on flat bands") {
  const WeightParams p;
  // (3, -1, 100 deg): pair (1, 1) has both factors in their pass bands.
  const Pose2D pose(3, -1, deg2rad(100));
  CHECK(weight_pair(pose, 1, 1, p) == 1.0);
  CHECK(weight_pair_gradient(pose, 1, 1, p).norm() == 0.0);
  // Pair (3, 2): both factors dead in the stop band.
  CHECK(weight_pair(pose, 3, 2, p) == 0.0);
  CHECK(weight_pair_gradient(pose, 3, 2, p).norm() == 0.0);
  CHECK_THROWS_AS(weight_pair_gradient(Pose2D(0, 0, 0), 1, 1, p), DegenerateGeometryError);
}

TEST_CASE("pair weight gradient matches finite differences in transitions") {
  const WeightParams p;
  const double h = 1e-6;
  Rng rng(12);
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 400; ++trial) {
    const Pose2D pose(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-kPi, kPi));
    if (pose.planar_norm() < 1.0) {
      continue;
    }
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        const double w = weight_pair(pose, i, j, p);
        if (w <= 1e-6 || w >= 1.0 - 1e-6) {
          continue;  // flat region, gradient identically zero
        }
        const Eigen::Vector3d analytic = weight_pair_gradient(pose, i, j, p);
        Eigen::Vector3d numeric;
        numeric[0] = (weight_pair(Pose2D(pose.x + h, pose.y, pose.theta), i, j, p) -
                      weight_pair(Pose2D(pose.x - h, pose.y, pose.theta), i, j, p)) /
                     (2 * h);
        numeric[1] = (weight_pair(Pose2D(pose.x, pose.y + h, pose.theta), i, j, p) -
                      weight_pair(Pose2D(pose.x, pose.y - h, pose.theta), i, j, p)) /
                     (2 * h);
        numeric[2] = (weight_pair(Pose2D(pose.x, pose.y, pose.theta + h), i, j, p) -
                      weight_pair(Pose2D(pose.x, pose.y, pose.theta - h), i, j, p)) /
                     (2 * h);
        const double rel = (analytic - numeric).norm() / std::max(numeric.norm(), 1e-9);
        CHECK(rel < 1e-4);
        ++checked;
      }
    }
  }
  CHECK(checked >= 400);
}

TEST_CASE("zero-weight pattern advances one antenna per quarter turn") {
  const WeightParams p;
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = rng.uniform(-5, 5);
    const double y = rng.uniform(-5, 5);
    if (std::hypot(x, y) < 1.0) {
      continue;
    }
    const double theta = rng.uniform(-kPi, kPi);
    for (int j = 1; j <= 4; ++j) {
      const double now = weight_B(Pose2D(x, y, theta), j, p);
      const double advanced = weight_B(Pose2D(x, y, theta + kPi / 2), j % 4 + 1, p);
      CHECK(now == doctest::Approx(advanced).epsilon(1e-12));
    }
  }
}

TEST_CASE("at most 7 of 16 pairs are fully ignored at the defaults") {
  const WeightParams p;
  Rng rng(55);
  int max_zeros = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Pose2D pose(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-kPi, kPi));
    if (pose.planar_norm() < 1.0) {
      continue;
    }
    int zeros = 0;
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        if (weight_pair(pose, i, j, p) == 0.0) {
          ++zeros;
        }
      }
    }
    CHECK(zeros <= 7);
    max_zeros = std::max(max_zeros, zeros);
  }
  // The bound is tight: a pose aligned with both stop bands reaches it.
  int zeros = 0;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (weight_pair(Pose2D(3, 0, 0), i, j, p) == 0.0) {
        ++zeros;
      }
    }
  }
  CHECK(zeros == 7);
}
