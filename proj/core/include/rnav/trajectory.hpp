#pragma once

#include <limits>
#include <vector>

#include "rnav/so3.hpp"
#include "rnav/types.hpp"

namespace rnav {

// One scalar coordinate of an analytic trajectory: a quadratic polynomial
// plus a sum of sinusoids. Closed under differentiation, which is all the
// simulator needs — every preset and every config-defined trajectory fits.
struct AxisSignal {
  struct Sinusoid {
    double amp = 0.0;
    double freq = 0.0;   // rad/s
    double phase = 0.0;  // rad, sin convention: amp * sin(freq*t + phase)
  };

  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<Sinusoid> terms;

  /// Exact derivative of any order (0 = value).
  double eval(double t, int deriv_order = 0) const;
};

/// Analytic scenario definition: inertial position, body angular velocity,
/// the initial attitude, and the horizon on which the maps are declared valid.
struct TrajectorySpec {
  AxisSignal pos[3];    // inertial position, per axis
  AxisSignal omega[3];  // body-frame angular velocity, per axis
  Rotation r0;
  double horizon = std::numeric_limits<double>::infinity();

  Vec3 position(double t, int deriv_order = 0) const;
  Vec3 angular_velocity(double t, int deriv_order = 0) const;
};

/// Figure-eight style reference run: fast sinusoidal translation (8 and
/// 16 rad/s), slow sinusoidal tumble, initial attitude rotated 90 deg about
/// the y axis. Position starts at exactly [1, 0, 0].
TrajectorySpec eight_trajectory();

/// Ballistic run: quadratic position with curvature g/2, zero angular
/// velocity, identity initial attitude. The accelerometer reads exactly zero,
/// which makes this the canonical unobservable scenario for the audit tools.
TrajectorySpec free_fall_trajectory(const Vec3& p0, const Vec3& v0,
                                    const Vec3& gravity_i);

}  // namespace rnav
