#pragma once

#include <cmath>

namespace uwbrp {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle to (-pi, pi]. Used everywhere an angle is stored or
// differenced so that heading errors and weight phases agree.
inline double wrap_pi(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace uwbrp
