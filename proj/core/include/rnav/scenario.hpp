#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "rnav/rng.hpp"
#include "rnav/so3.hpp"
#include "rnav/trajectory.hpp"
#include "rnav/types.hpp"

namespace rnav {

/// Fixed environment: inertial gravity, the unit direction measured by the
/// body-frame vector sensor (magnetometer), and the range anchor position.
struct WorldConstants {
  Vec3 gravity_i{0.0, 0.0, 9.81};
  Vec3 mag_dir_i{1.0 / std::numbers::sqrt2, 0.0, 1.0 / std::numbers::sqrt2};
  Vec3 anchor_i{0.0, 0.0, 0.0};

  /// Throws BadConfig unless ||mag_dir_i|| == 1 (within 1e-12) and the
  /// magnetometer direction and gravity are non-collinear (cross norm > 1e-6).
  void validate() const;
};

/// Per-sample standard deviations (white, per axis) plus the master seed.
struct NoiseConfig {
  std::uint64_t seed = 1;
  double sigma_omega = 1e-2;  // rad/s
  double sigma_acc = 3e-2;    // m/s^2
  double sigma_mag = 1e-1;    // unitless (unit-vector measurement)
  double sigma_uwb = 1e-1;    // m
};

/// One ground-truth sample. Derivative signals (a_b_dot, a_b_ddot, omega_dot)
/// come from centered 2nd-order finite differences at the run step.
struct RigidBodyTruth {
  double t = 0.0;
  Rotation R;     // body -> inertial
  Vec3 p_i;       // inertial position
  Vec3 v_i;       // inertial velocity
  Vec3 a_b;       // apparent (specific) acceleration, body frame
  Vec3 omega;     // angular velocity, body frame
  Vec3 a_b_dot;
  Vec3 a_b_ddot;
  Vec3 omega_dot;
};

/// One sensor epoch: gyro, accelerometer, magnetometer, anchor range.
struct SensorSample {
  double t = 0.0;
  Vec3 gyro;
  Vec3 accel;
  Vec3 mag;
  double range = 0.0;
};

/// Truth at a single time: position/velocity analytic, attitude by RK4
/// integration of R' = R*skew(omega) from R(0) (per-step reprojection), FD
/// step h for the derivative signals. Throws HorizonExceeded outside
/// [0, spec.horizon].
RigidBodyTruth truth_at(const TrajectorySpec& spec, const WorldConstants& world,
                        double t, double h);

/// Full truth grid on [0, T] at step dt: one continuous attitude integration
/// (not per-sample restarts), T/dt + 1 samples. Throws InvalidGrid unless
/// dt > 0 and T is a positive integer multiple of dt.
std::vector<RigidBodyTruth> run_truth(const TrajectorySpec& spec,
                                      const WorldConstants& world, double dt,
                                      double T);

/// Corrupt one truth sample with sensor noise. Draws depend only on
/// (seed, sensor, sample_index, axis), so any sample can be produced in any
/// order with identical results. Noiseless truth is recovered with all sigmas
/// zero. The range is clamped at zero (a physical distance).
SensorSample sense(const RigidBodyTruth& truth, const WorldConstants& world,
                   const NoiseConfig& noise, std::uint64_t sample_index);

}  // namespace rnav
