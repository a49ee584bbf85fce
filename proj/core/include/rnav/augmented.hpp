#pragma once

#include <array>
#include <vector>

#include "rnav/scenario.hpp"
#include "rnav/types.hpp"

namespace rnav {

// The squared anchor distance is a quadratic form in the body-frame state
// x = (p, v, g). Appending four auxiliary coordinates
//
//   aux = ( |p|^2/2,  p.v,  |v|^2 + p.g,  3 v.g )
//
// turns it into a *linear* output of a 13-state time-varying linear system
// driven by the measured specific acceleration and the known |gravity|^2.
// This header builds every piece of that system.

/// Body-frame navigation state (anchor-relative position, velocity, gravity).
struct BodyState {
  Vec3 p_b;
  Vec3 v_b;
  Vec3 g_b;

  Vec9 stacked() const;
};

/// Body state of a truth sample: p_b = R^T (p_i - anchor), v_b = R^T v_i,
/// g_b = R^T gravity_i.
BodyState body_state(const RigidBodyTruth& truth, const WorldConstants& world);

/// Constant part of the body dynamics: the p <- v <- g integrator chain.
Mat9 shift9();

/// Full body-state system matrix: shift9() minus blkdiag(skew(omega) x3).
Mat9 body_dynamics(const Vec3& omega);

/// Auxiliary-block shift (4x4 superdiagonal ones): each aux coordinate feeds
/// the one before it.
Mat4 aux_shift();

/// Quadratic forms whose successive Lie derivatives along the body dynamics
/// generate the aux coordinates: c[i] is the form of aux_i (i = 0..3, each
/// aux_i = x^T c[i] x / 2) and c5_sym is the next form in the chain, whose
/// quadratic form is the constant 6|g|^2 — the source of the gravity feed.
/// The skew parts of the dynamics commute with every member, so the chain is
/// independent of omega.
struct OutputChain {
  std::array<Mat9, 4> c;
  Mat9 c5_sym;
};
OutputChain output_chain();

/// Rows coupling the aux dynamics to the body state:
/// rows [0; a^T 0 0; 0 2a^T 0; 0 0 3a^T] (the middle block-row of each chain
/// member, contracted with the specific acceleration).
Eigen::Matrix<double, kAuxDim, kBodyDim> coupling_rows(const Vec3& a_b);

/// Constant gain on |gravity|^2 in the last aux rate: d/dt(3 v.g) contributes
/// 3|g|^2 beyond the coupling rows. Verified by estimate_gravity_feed.
inline constexpr double kGravityFeedGain = 3.0;

/// The assembled 13-state linear time-varying system
///   x' = a x + b u,  y = c x,  u = (a_b, kGravityFeedGain * |gravity|^2).
struct AugmentedSystem {
  Mat13 a;
  Eigen::Matrix<double, kAugDim, kAuxDim> b;
  RowVec13 c;
  Vec4 u;

  Vec13 drift(const Vec13& x) const { return a * x + b * u; }
};
AugmentedSystem assemble_ltv(const Vec3& omega, const Vec3& a_b,
                             double gravity_norm_sq);

/// Exact lifted coordinates of a body state (aux block then body block).
Vec13 lift_state(const BodyState& s);

/// Empirical check that the gravity feed constant is right: numerically
/// differentiates the last aux coordinate along a noiseless truth run (4th
/// order stencil), subtracts the coupling-row contribution, and fits the
/// remaining constant as kappa * |gravity|^2. Throws NonConstantResidual if
/// the residual ripples by more than 1e-3 * |gravity|^2.
struct GravityFeedEstimate {
  double kappa = 0.0;
  double max_deviation = 0.0;
};
GravityFeedEstimate estimate_gravity_feed(
    const std::vector<RigidBodyTruth>& truth_run, const WorldConstants& world);

}  // namespace rnav
