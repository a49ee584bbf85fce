#include "rnav/attitude.hpp"

#include "rnav/errors.hpp"

namespace rnav {

AttitudeFilter::AttitudeFilter(const AttitudeConfig& config, const Rotation& r0)
    : cfg_(config), rhat_(r0) {
  if (!(cfg_.k1 > 0.0)) throw BadConfig("attitude: k1 must be positive");
  if (!(cfg_.rho1 >= 0.0) || !(cfg_.rho2 >= 0.0))
    throw BadConfig("attitude: rho gains must be non-negative");
  if (!(cfg_.dt > 0.0)) throw BadConfig("attitude: dt must be positive");
  if (!cfg_.mag_dir_i.allFinite() || !cfg_.gravity_i.allFinite())
    throw BadConfig("attitude: references must be finite");
}

Vec3 AttitudeFilter::correction(const Vec3& mag_b, const Vec3& g_b_est) const {
  const Mat3 rt = rhat_.transposed();
  return cfg_.rho1 * mag_b.cross(rt * cfg_.mag_dir_i) +
         cfg_.rho2 * g_b_est.cross(rt * cfg_.gravity_i);
}

void AttitudeFilter::step(const Vec3& gyro, const Vec3& mag_b,
                          const Vec3& g_b_est) {
  if (!gyro.allFinite() || !mag_b.allFinite() || !g_b_est.allFinite())
    throw NonFiniteInput("attitude: non-finite input");
  const Vec3 rate = gyro + cfg_.k1 * correction(mag_b, g_b_est);
  rhat_ = project_to_so3(rhat_.matrix() * exp_so3(cfg_.dt * rate).matrix());
}

double attitude_error(const Rotation& truth, const Rotation& estimate) {
  return rotation_angle(
      Rotation::from_matrix(truth.matrix() * estimate.transposed()));
}

}  // namespace rnav
