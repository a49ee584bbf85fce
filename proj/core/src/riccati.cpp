#include "rnav/riccati.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "rnav/errors.hpp"

namespace rnav {
namespace {

bool symmetric(const Mat13& m, double tol) {
  return (m - m.transpose()).norm() <= tol * (1.0 + m.norm());
}

bool positive_definite(const Mat13& m) {
  Eigen::LLT<Mat13> llt(m);
  return llt.info() == Eigen::Success;
}

bool positive_semidefinite(const Mat13& m) {
  // Shift by a tiny multiple of the scale so an exact-zero matrix passes.
  const double shift = 1e-12 * (1.0 + m.norm());
  return positive_definite(m + shift * Mat13::Identity());
}

struct Derivative {
  Vec13 dx;
  Mat13 dp;
};

Derivative flow(const AugmentedSystem& sys, double q, const Mat13& noise,
                double y, const Vec13& x, const Mat13& p) {
  const Vec13 gain = p * sys.c.transpose() * q;
  Derivative d;
  d.dx = sys.drift(x) + gain * (y - sys.c * x);
  const Mat13 ap = sys.a * p;
  d.dp = ap + ap.transpose() - gain * (sys.c * p) + noise;
  return d;
}

}  // namespace

RiccatiObserver::RiccatiObserver(const RiccatiConfig& config, const Vec13& x0)
    : cfg_(config), x_(x0), p_(config.p0) {
  if (!(cfg_.dt > 0.0)) throw BadConfig("riccati: dt must be positive");
  if (!(cfg_.q >= 0.0)) throw BadConfig("riccati: q must be non-negative");
  if (!(cfg_.gravity_norm_sq >= 0.0))
    throw BadConfig("riccati: gravity_norm_sq must be non-negative");
  if (!symmetric(cfg_.p0, 1e-9) || !positive_definite(cfg_.p0))
    throw BadConfig("riccati: p0 must be symmetric positive definite");
  if (!symmetric(cfg_.process_noise, 1e-9) ||
      !positive_semidefinite(cfg_.process_noise))
    throw BadConfig("riccati: process_noise must be symmetric PSD");
  if (!x0.allFinite()) throw BadConfig("riccati: x0 must be finite");
}

void RiccatiObserver::step(const Vec3& gyro, const Vec3& accel, double range) {
  if (!gyro.allFinite() || !accel.allFinite() || !std::isfinite(range))
    throw NonFiniteInput("riccati: non-finite sensor input");

  const double y = 0.5 * range * range;
  // Zero-order hold over the epoch: one system matrix per step.
  const AugmentedSystem sys =
      assemble_ltv(gyro, accel, cfg_.gravity_norm_sq);
  const double h = cfg_.dt;

  const Derivative k1 = flow(sys, cfg_.q, cfg_.process_noise, y, x_, p_);
  const Derivative k2 = flow(sys, cfg_.q, cfg_.process_noise, y,
                             x_ + 0.5 * h * k1.dx, p_ + 0.5 * h * k1.dp);
  const Derivative k3 = flow(sys, cfg_.q, cfg_.process_noise, y,
                             x_ + 0.5 * h * k2.dx, p_ + 0.5 * h * k2.dp);
  const Derivative k4 = flow(sys, cfg_.q, cfg_.process_noise, y,
                             x_ + h * k3.dx, p_ + h * k3.dp);

  x_ += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  p_ += (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);

  last_asymmetry_ = (p_ - p_.transpose()).norm();
  p_ = (0.5 * (p_ + p_.transpose())).eval();

  if (!x_.allFinite() || !p_.allFinite() || !positive_definite(p_))
    throw PNotPositiveDefinite("riccati: covariance lost definiteness");
}

NavEstimates RiccatiObserver::estimates() const {
  NavEstimates est;
  est.p_b = x_.segment<3>(4);
  est.v_b = x_.segment<3>(7);
  est.g_b = x_.segment<3>(10);
  return est;
}

Vec13 RiccatiObserver::gain() const {
  // C picks the first component, so P C^T is just the first column.
  return p_.col(0) * cfg_.q;
}

double RiccatiObserver::innovation(double range) const {
  return 0.5 * range * range - x_(0);
}

}  // namespace rnav
