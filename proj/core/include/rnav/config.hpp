#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rnav/scenario.hpp"
#include "rnav/trajectory.hpp"
#include "rnav/types.hpp"

namespace rnav {

// Flat key=value run configuration. '#' starts a comment, blank lines are
// ignored, unknown or duplicate keys are errors (ConfigParse). Multi-valued
// keys take whitespace-separated numbers. The full key list:
//
//   scenario              eight | free_fall | custom
//   dt, T                 grid step and run length [s]
//   seed                  master noise seed
//   out                   output directory
//   world.gravity         3 numbers, inertial gravity [m/s^2]
//   world.mag_dir         3 numbers, unit field direction
//   world.anchor          3 numbers, range-anchor position [m]
//   noise.sigma_gyro      per-axis stddev [rad/s]
//   noise.sigma_acc       per-axis stddev [m/s^2]
//   noise.sigma_mag       per-axis stddev
//   noise.sigma_range     stddev [m]
//   riccati.p0            scalar: initial covariance p0 * I
//   riccati.q             measurement weight
//   riccati.v             scalar: process noise v * I
//   riccati.x0            13 numbers, initial observer state
//   attitude.k1           correction gain
//   attitude.rho1         magnetometer weight
//   attitude.rho2         gravity weight (default 1/|gravity|^2)
//   attitude.rhat0        3 numbers, axis-angle initial attitude estimate
//   audit.delta           observability window length [s]
//   audit.stride          window spacing [s]
//   audit.threshold       margin below which a window fails
//   free_fall.p0          3 numbers, initial position of the free-fall preset
//   free_fall.v0          3 numbers, its initial velocity
//   traj.{pos|omega}.{x|y|z}.poly   up to 3 numbers c0 c1 c2 (custom scenario)
//   traj.{pos|omega}.{x|y|z}.sin    amp freq phase triples (custom scenario)
//   traj.r0               3 numbers, axis-angle initial attitude
//   traj.horizon          domain bound of the custom trajectory [s]
//   sweep.parameter       name of a numeric key to sweep
//   sweep.values          grid of values for it
struct RunConfig {
  std::string scenario = "eight";
  double dt = 1e-3;
  double T = 20.0;
  std::string out_dir = "out";

  WorldConstants world;
  NoiseConfig noise;

  double riccati_p0 = 10.0;
  double riccati_q = 30.0;
  double riccati_v = 1.0;
  Vec13 riccati_x0 = Vec13::Zero();

  double attitude_k1 = 1.0;
  double attitude_rho1 = 1.0;
  std::optional<double> attitude_rho2;  // unset: resolved to 1/|gravity|^2
  Vec3 attitude_rhat0 = Vec3::Zero();   // axis-angle

  double audit_delta = 2.0;
  double audit_stride = 1.0;
  double audit_threshold = 1e-8;

  Vec3 free_fall_p0{1.0, 0.0, 0.0};
  Vec3 free_fall_v0{0.0, 0.0, 0.0};
  TrajectorySpec custom;  // used when scenario == "custom"

  std::string sweep_parameter;
  std::vector<double> sweep_values;
};

/// Parse configuration text. Throws ConfigParse on malformed lines, unknown
/// or duplicate keys, wrong value counts, or invariant violations (dt <= 0,
/// T <= dt, unknown scenario, audit window longer than the run, ...).
RunConfig parse_config_text(const std::string& text);

/// Read and parse a configuration file. Throws IoFailure if unreadable.
RunConfig parse_config_file(const std::string& path);

/// Set one of the numeric (sweepable) keys by name; used by parameter
/// sweeps. Throws ConfigParse for keys that are not single numbers.
void set_numeric_key(RunConfig& config, const std::string& key, double value);

}  // namespace rnav
