#include "uwbrp/simulator.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "uwbrp/errors.hpp"

namespace uwbrp {

namespace {

// Per-pair ranging biases [m] measured on the reference robot pair,
// row i = A's antenna, column j = B's antenna.
const std::vector<double> kReferenceBias = {
    0.268, 0.266, 0.277, 0.230,  //
    0.093, 0.112, 0.227, 0.188,  //
    0.046, 0.018, 0.170, 0.078,  //
    0.041, 0.065, 0.178, 0.095,
};

void check_speed(double speed) {
  if (!(speed > 0.0) || speed > kMaxSpeed) {
    throw ParameterError("path speed must be in (0, " + std::to_string(kMaxSpeed) + "] m/s");
  }
}

void check_yaw_rate(double rate) {
  if (!(std::abs(rate) > 0.0) || std::abs(rate) > kMaxYawRate) {
    throw ParameterError("yaw rate magnitude must be in (0, " + std::to_string(kMaxYawRate) +
                         "] rad/s");
  }
}

struct Segment {
  double duration;
  std::function<Pose2D(double)> pose;  // local time in [0, duration]
};

std::vector<TimedPose> sample_segments(const std::vector<Segment>& segments, double rate_hz) {
  if (!(rate_hz > 0.0)) {
    throw ParameterError("rate_hz must be positive");
  }
  double total = 0.0;
  for (const auto& s : segments) {
    total += s.duration;
  }
  const int ticks = static_cast<int>(std::floor(total * rate_hz + 1e-9));
  std::vector<TimedPose> out;
  out.reserve(ticks + 1);
  std::size_t seg = 0;
  double seg_start = 0.0;
  for (int k = 0; k <= ticks; ++k) {
    const double t = k / rate_hz;
    while (seg + 1 < segments.size() && t > seg_start + segments[seg].duration + 1e-12) {
      seg_start += segments[seg].duration;
      ++seg;
    }
    const double local = std::min(t - seg_start, segments[seg].duration);
    out.push_back({t, segments[seg].pose(local)});
  }
  return out;
}

// Straight drive + in-place turns along a polyline.
std::vector<Segment> polyline_segments(const std::vector<Eigen::Vector2d>& points, double speed,
                                       double turn_rate) {
  if (points.size() < 2) {
    throw ParameterError("waypoint path needs at least 2 points");
  }
  check_speed(speed);
  check_yaw_rate(turn_rate);
  const double turn_speed = std::abs(turn_rate);

  std::vector<Segment> segs;
  double heading = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const Eigen::Vector2d from = points[k];
    const Eigen::Vector2d to = points[k + 1];
    const Eigen::Vector2d d = to - from;
    const double len = d.norm();
    if (len < 1e-12) {
      continue;
    }
    const double leg_heading = std::atan2(d.y(), d.x());
    if (segs.empty()) {
      heading = leg_heading;  // start already facing the first leg
    } else if (std::abs(wrap_pi(leg_heading - heading)) > 1e-12) {
      const double turn = wrap_pi(leg_heading - heading);
      const double from_heading = heading;
      segs.push_back({std::abs(turn) / turn_speed, [from, from_heading, turn, turn_speed](double t) {
                        const double sgn = turn >= 0.0 ? 1.0 : -1.0;
                        return Pose2D(from.x(), from.y(), from_heading + sgn * turn_speed * t);
                      }});
      heading = leg_heading;
    }
    const double cur_heading = heading;
    segs.push_back({len / speed, [from, d, len, speed, cur_heading](double t) {
                      const Eigen::Vector2d p = from + d * (speed * t / len);
                      return Pose2D(p.x(), p.y(), cur_heading);
                    }});
  }
  if (segs.empty()) {
    throw ParameterError("waypoint path has zero length");
  }
  return segs;
}

}  // namespace

NoiseModel NoiseModel::none(int antenna_count) {
  NoiseModel m;
  m.bias = CalibrationTable(antenna_count);
  return m;
}

NoiseModel NoiseModel::gaussian_only(double sigma, int antenna_count) {
  if (sigma < 0.0) {
    throw ParameterError("gaussian sigma must be >= 0");
  }
  NoiseModel m;
  m.gaussian_sigma = sigma;
  m.bias = CalibrationTable(antenna_count);
  return m;
}

NoiseModel NoiseModel::hardware_like() {
  NoiseModel m;
  m.gaussian_sigma = 0.2;
  m.bias = reference_bias_table();
  m.obstruction_extra_bias = 0.41;
  // Observed eclipse spikes are sharp: contained inside the angular zone
  // the estimator devalues, with the same stop band but a tighter
  // shoulder than the estimator's own transition.
  m.obstruction_params = WeightParams(deg2rad(30.0), deg2rad(60.0));
  return m;
}

const CalibrationTable& reference_bias_table() {
  static const CalibrationTable table(4, kReferenceBias);
  return table;
}

Pose2D sample_uniform_pose(Rng& rng, double half_extent, double min_planar_norm) {
  double x = 0.0;
  double y = 0.0;
  do {
    x = rng.uniform(-half_extent, half_extent);
    y = rng.uniform(-half_extent, half_extent);
  } while (std::hypot(x, y) < min_planar_norm);
  const double theta = rng.uniform(0.0, kTwoPi);
  return {x, y, theta};
}

RangeMatrix synth_ranges(const Pose2D& pose, const AntennaLayout& layout, const NoiseModel& noise,
                         Rng& rng) {
  if (noise.bias.antenna_count() != layout.count) {
    throw ShapeError("noise bias table does not match antenna layout");
  }
  const bool obstructed = noise.obstruction_extra_bias > 0.0;
  if (obstructed && pose.x == 0.0 && pose.y == 0.0) {
    throw DegenerateGeometryError("obstruction model undefined at zero planar offset");
  }
  const double bearing = std::atan2(pose.y, pose.x);

  RangeMatrix z(layout.count);
  for (int i = 1; i <= layout.count; ++i) {
    for (int j = 1; j <= layout.count; ++j) {
      double v = pairwise_distance(layout, pose, i, j) + noise.bias.mu(i, j);
      if (noise.gaussian_sigma > 0.0) {
        v += rng.normal(0.0, noise.gaussian_sigma);
      }
      if (obstructed) {
        const auto pw = detail::pair_weight_terms(bearing, pose.theta, i, j,
                                                  noise.obstruction_params, layout.count);
        v += noise.obstruction_extra_bias * (1.0 - pw.value);
      }
      z.at(i, j) = v;
    }
  }
  return z;
}

std::vector<TimedPose> generate_trajectory(const TrajectorySpec& spec) {
  using Kind = TrajectorySpec::Kind;
  std::vector<Segment> segs;

  switch (spec.kind) {
    case Kind::StaticPose: {
      if (spec.duration < 0.0) {
        throw ParameterError("duration must be >= 0");
      }
      const Pose2D p = spec.start;
      segs.push_back({spec.duration, [p](double) { return p; }});
      break;
    }
    case Kind::RotateInPlace: {
      check_yaw_rate(spec.angular_speed);
      double duration = spec.duration;
      if (spec.revolutions > 0.0) {
        duration = spec.revolutions * kTwoPi / std::abs(spec.angular_speed);
      }
      if (!(duration > 0.0)) {
        throw ParameterError("rotation needs a positive duration or revolutions");
      }
      const Pose2D p = spec.start;
      const double w = spec.angular_speed;
      segs.push_back({duration, [p, w](double t) { return Pose2D(p.x, p.y, p.theta + w * t); }});
      break;
    }
    case Kind::Circle: {
      check_speed(spec.speed);
      if (!(spec.radius > 0.0)) {
        throw ParameterError("circle radius must be positive");
      }
      const double yaw_rate = spec.speed / spec.radius;
      if (yaw_rate > kMaxYawRate) {
        throw ParameterError("circle of radius " + std::to_string(spec.radius) + " at " +
                             std::to_string(spec.speed) + " m/s exceeds the yaw rate limit");
      }
      const double dir = spec.clockwise ? -1.0 : 1.0;
      double duration = spec.duration;
      if (!(duration > 0.0)) {
        duration = kTwoPi * spec.radius / spec.speed;  // one lap
      }
      const double r = spec.radius;
      const double w = dir * yaw_rate;
      segs.push_back({duration, [r, w, dir](double t) {
                        const double a = w * t;
                        return Pose2D(r * std::cos(a), r * std::sin(a), a + dir * kPi / 2.0);
                      }});
      break;
    }
    case Kind::Box: {
      if (!(spec.width > 0.0) || !(spec.height > 0.0)) {
        throw ParameterError("box extents must be positive");
      }
      const double hw = spec.width / 2.0;
      const double hh = spec.height / 2.0;
      const std::vector<Eigen::Vector2d> corners = {
          {-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}, {-hw, -hh}};
      segs = polyline_segments(corners, spec.speed, spec.angular_speed);
      // Close the heading loop with a final quarter turn back to +x.
      const Eigen::Vector2d home = corners.front();
      const double turn_speed = std::abs(spec.angular_speed);
      segs.push_back({(kPi / 2.0) / turn_speed, [home, turn_speed](double t) {
                        return Pose2D(home.x(), home.y(), -kPi / 2.0 + turn_speed * t);
                      }});
      break;
    }
    case Kind::Waypoints: {
      segs = polyline_segments(spec.waypoints, spec.speed, spec.angular_speed);
      break;
    }
  }

  return sample_segments(segs, spec.rate_hz);
}

std::vector<Eigen::Vector2d> kidney_bean_waypoints(double center_x, double scale, int points) {
  if (points < 8) {
    throw ParameterError("bean path needs at least 8 points");
  }
  std::vector<Eigen::Vector2d> out;
  out.reserve(points + 1);
  for (int k = 0; k <= points; ++k) {
    const double phi = kTwoPi * k / points;
    const double r = scale * (1.0 + 0.65 * std::cos(phi));
    out.emplace_back(center_x + r * std::cos(phi), r * std::sin(phi));
  }
  return out;
}

}  // namespace uwbrp
