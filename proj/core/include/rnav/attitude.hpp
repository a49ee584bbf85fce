#pragma once

#include "rnav/so3.hpp"
#include "rnav/types.hpp"

namespace rnav {

/// Gains and inertial references for the complementary attitude filter.
/// rho2 scales the gravity-direction correction coming from the navigation
/// observer; rho2 = 0 switches that channel off entirely (magnetometer-only
/// operation), so only k1 is required to be strictly positive.
struct AttitudeConfig {
  double k1 = 1.0;
  double rho1 = 1.0;
  double rho2 = 1.0 / (9.81 * 9.81);
  Vec3 mag_dir_i{1.0, 0.0, 0.0};
  Vec3 gravity_i{0.0, 0.0, 9.81};
  double dt = 1e-3;
};

// Nonlinear complementary filter on SO(3). The innovation mixes two vector
// alignments computed in the body frame:
//
//   sigma = rho1 * (mag_b x Rhat^T mag_dir_i)
//         + rho2 * (g_b_est x Rhat^T gravity_i)
//
// and the attitude is advanced by the exponential of the corrected angular
// rate, re-projected onto SO(3) each step. The gravity direction g_b_est is
// supplied by the navigation observer, which makes the cascade one-way: this
// filter consumes its output and feeds nothing back.
class AttitudeFilter {
 public:
  /// Throws BadConfig unless k1 > 0, rho1 >= 0, rho2 >= 0, dt > 0 and the
  /// inertial references are finite.
  AttitudeFilter(const AttitudeConfig& config, const Rotation& r0);

  /// Correction term sigma for the current attitude estimate.
  Vec3 correction(const Vec3& mag_b, const Vec3& g_b_est) const;

  /// Advance one epoch with the measured rate and the body-frame references.
  /// Throws NonFiniteInput on non-finite inputs.
  void step(const Vec3& gyro, const Vec3& mag_b, const Vec3& g_b_est);

  const Rotation& attitude() const { return rhat_; }

 private:
  AttitudeConfig cfg_;
  Rotation rhat_;
};

/// Angle of R Rhat^T: the geodesic distance between truth and estimate.
double attitude_error(const Rotation& truth, const Rotation& estimate);

}  // namespace rnav
