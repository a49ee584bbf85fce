#pragma once

#include "rnav/augmented.hpp"
#include "rnav/types.hpp"

namespace rnav {

/// Tuning for the 13-state observer. The measurement weight q multiplies the
/// squared-range innovation; process_noise stabilises the Riccati flow.
/// q = 0 with zero process noise degenerates to open-loop propagation, which
/// is a supported (and tested) configuration, hence q >= 0 / PSD validation
/// rather than strict positivity.
struct RiccatiConfig {
  Mat13 p0 = 10.0 * Mat13::Identity();
  double q = 30.0;
  Mat13 process_noise = Mat13::Identity();
  double dt = 1e-3;
  double gravity_norm_sq = 9.81 * 9.81;  // |gravity_i|^2, a known constant
};

/// Body-frame navigation estimates recovered from the observer state.
struct NavEstimates {
  Vec3 p_b;
  Vec3 v_b;
  Vec3 g_b;
};

// Deterministic Riccati observer for the lifted range system. Each step does
// one RK4 pass over the coupled state/covariance flow
//
//   x' = A x + B u + K (y - C x),   K = P C^T q,
//   P' = A P + P A^T - P C^T q C P + process_noise,
//
// with A, B, u assembled from the measured gyro and accelerometer and
// y = range^2 / 2. P is re-symmetrised after every step and checked positive
// definite by Cholesky; losing definiteness throws PNotPositiveDefinite.
class RiccatiObserver {
 public:
  /// Throws BadConfig if p0 is not symmetric positive definite, q < 0,
  /// process_noise is not symmetric PSD, or dt <= 0.
  RiccatiObserver(const RiccatiConfig& config, const Vec13& x0);

  /// Advance one sensor epoch. Throws NonFiniteInput on non-finite inputs.
  void step(const Vec3& gyro, const Vec3& accel, double range);

  const Vec13& state() const { return x_; }
  const Mat13& covariance() const { return p_; }

  /// p_b / v_b / g_b block of the state.
  NavEstimates estimates() const;

  /// Current gain K = P C^T q (linear in both P and q).
  Vec13 gain() const;

  /// Innovation y - C x for a given range measurement, y = range^2 / 2.
  double innovation(double range) const;

  /// ||P - P^T||_F produced by the last step before re-symmetrisation.
  double last_asymmetry() const { return last_asymmetry_; }

 private:
  RiccatiConfig cfg_;
  Vec13 x_;
  Mat13 p_;
  double last_asymmetry_ = 0.0;
};

}  // namespace rnav
