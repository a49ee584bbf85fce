#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rnav/observability.hpp"
#include "rnav/scenario.hpp"
#include "rnav/types.hpp"

namespace rnav {

// Plot-ready CSV emission. All numbers are written with 17 significant
// digits, so equal doubles produce equal bytes and reruns diff clean.

/// One estimator log row: observer state plus covariance health numbers.
struct RiccatiLogRow {
  double t = 0.0;
  Vec13 x = Vec13::Zero();
  double trace_p = 0.0;
  double min_eig_p = 0.0;
  double innovation = 0.0;
};

/// One attitude log row: estimate and its angle to the true attitude.
struct AttitudeLogRow {
  double t = 0.0;
  Mat3 rhat = Mat3::Identity();
  double attitude_error = 0.0;  // rad
};

/// Format a double with 17 significant digits (shortest round-trip-safe).
std::string format_number(double v);

/// Combined truth + sensor log, one row per grid sample:
/// t, p, v, R (row-major), a_b, omega, range, gyro, acc, mag.
void write_truth_sensors_csv(const std::string& path,
                             const std::vector<RigidBodyTruth>& truth,
                             const std::vector<SensorSample>& sensors);

/// t, aux_1..aux_4, p_b, v_b, g_b, trace_p, min_eig_p, innovation.
void write_riccati_csv(const std::string& path,
                       const std::vector<RiccatiLogRow>& rows);

/// t, rhat (row-major), attitude_error_rad.
void write_attitude_csv(const std::string& path,
                        const std::vector<AttitudeLogRow>& rows);

/// window_start, delta, level, min_eig — three level rows per window.
void write_audit_csv(const std::string& path,
                     const std::vector<WindowCheck>& windows);

/// key=value lines, in the order given.
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>&
                       entries);

}  // namespace rnav
