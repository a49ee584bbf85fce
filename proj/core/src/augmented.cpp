#include "rnav/augmented.hpp"

#include <cmath>

#include "rnav/errors.hpp"

namespace rnav {

Vec9 BodyState::stacked() const {
  Vec9 x;
  x << p_b, v_b, g_b;
  return x;
}

BodyState body_state(const RigidBodyTruth& truth, const WorldConstants& world) {
  const Mat3 rt = truth.R.transposed();
  return {rt * (truth.p_i - world.anchor_i), rt * truth.v_i,
          rt * world.gravity_i};
}

Mat9 shift9() {
  Mat9 m = Mat9::Zero();
  m.block<3, 3>(0, 3).setIdentity();
  m.block<3, 3>(3, 6).setIdentity();
  return m;
}

Mat9 body_dynamics(const Vec3& omega) {
  Mat9 m = shift9();
  const Mat3 wx = skew(omega);
  for (int i = 0; i < 3; ++i) {
    m.block<3, 3>(3 * i, 3 * i) -= wx;
  }
  return m;
}

Mat4 aux_shift() {
  Mat4 s = Mat4::Zero();
  s(0, 1) = s(1, 2) = s(2, 3) = 1.0;
  return s;
}

OutputChain output_chain() {
  OutputChain chain;
  const Mat9 a_bar = shift9();
  chain.c[0] = Mat9::Zero();
  chain.c[0].block<3, 3>(0, 0).setIdentity();
  for (int i = 1; i < 4; ++i) {
    chain.c[i] = chain.c[i - 1] * a_bar + a_bar.transpose() * chain.c[i - 1];
  }
  const Mat9 c5 = chain.c[3] * a_bar + a_bar.transpose() * chain.c[3];
  chain.c5_sym = 0.5 * (c5 + c5.transpose());
  return chain;
}

Eigen::Matrix<double, kAuxDim, kBodyDim> coupling_rows(const Vec3& a_b) {
  Eigen::Matrix<double, kAuxDim, kBodyDim> t;
  t.setZero();
  t.block<1, 3>(1, 0) = a_b.transpose();
  t.block<1, 3>(2, 3) = 2.0 * a_b.transpose();
  t.block<1, 3>(3, 6) = 3.0 * a_b.transpose();
  return t;
}

AugmentedSystem assemble_ltv(const Vec3& omega, const Vec3& a_b,
                             double gravity_norm_sq) {
  AugmentedSystem sys;
  sys.a.setZero();
  sys.a.topLeftCorner<kAuxDim, kAuxDim>() = aux_shift();
  sys.a.topRightCorner<kAuxDim, kBodyDim>() = coupling_rows(a_b);
  sys.a.bottomRightCorner<kBodyDim, kBodyDim>() = body_dynamics(omega);

  sys.b.setZero();
  sys.b(3, 3) = 1.0;                              // |gravity|^2 feed
  sys.b.block<3, 3>(kAuxDim + 3, 0).setIdentity();  // a_b drives v_b

  sys.c.setZero();
  sys.c(0) = 1.0;

  sys.u << a_b, kGravityFeedGain * gravity_norm_sq;
  return sys;
}

Vec13 lift_state(const BodyState& s) {
  Vec13 x;
  x(0) = 0.5 * s.p_b.squaredNorm();
  x(1) = s.p_b.dot(s.v_b);
  x(2) = s.v_b.squaredNorm() + s.p_b.dot(s.g_b);
  x(3) = 3.0 * s.v_b.dot(s.g_b);
  x.tail<kBodyDim>() = s.stacked();
  return x;
}

GravityFeedEstimate estimate_gravity_feed(
    const std::vector<RigidBodyTruth>& truth_run, const WorldConstants& world) {
  if (truth_run.size() < 5) {
    throw InvalidGrid("estimate_gravity_feed: need at least 5 samples");
  }
  const double h = truth_run[1].t - truth_run[0].t;
  const double gn2 = world.gravity_i.squaredNorm();

  std::vector<double> aux3(truth_run.size());
  for (std::size_t k = 0; k < truth_run.size(); ++k) {
    const BodyState s = body_state(truth_run[k], world);
    aux3[k] = 3.0 * s.v_b.dot(s.g_b);
  }

  // Interior 4th-order stencil keeps the differentiation error far below the
  // non-constancy tolerance even on fast trajectories.
  std::vector<double> residual;
  residual.reserve(truth_run.size());
  for (std::size_t k = 2; k + 2 < truth_run.size(); ++k) {
    const double rate = (aux3[k - 2] - 8.0 * aux3[k - 1] + 8.0 * aux3[k + 1] -
                         aux3[k + 2]) /
                        (12.0 * h);
    const BodyState s = body_state(truth_run[k], world);
    const double coupling =
        (coupling_rows(truth_run[k].a_b) * s.stacked())(3);
    residual.push_back(rate - coupling);
  }

  GravityFeedEstimate est;
  double mean = 0.0;
  for (const double r : residual) mean += r;
  mean /= static_cast<double>(residual.size());
  est.kappa = gn2 > 0.0 ? mean / gn2 : 0.0;
  for (const double r : residual) {
    est.max_deviation = std::max(est.max_deviation, std::abs(r - mean));
  }
  if (est.max_deviation > 1e-3 * gn2) {
    throw NonConstantResidual(
        "estimate_gravity_feed: residual deviation " +
        std::to_string(est.max_deviation) + " exceeds 1e-3 * |g|^2");
  }
  return est;
}

}  // namespace rnav
