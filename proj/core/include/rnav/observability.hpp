#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rnav/augmented.hpp"
#include "rnav/scenario.hpp"
#include "rnav/types.hpp"

namespace rnav {

// Numerical certification of uniform observability for the lifted range
// system, at three levels of reduction:
//
//   full_augmented — Gramian of the 13-state time-varying pair (A(t), C);
//   reduced_pair   — Gramian of the constant-shift pair obtained by rotating
//                    the body blocks into the inertial frame, whose output
//                    row is the fourth derivative row r4;
//   pe_phi         — persistency of excitation of the 3-vector signal phi,
//                    the first block of r4.
//
// The three are linked: block-triangularity factors the transition matrix,
// and the r-row recursion connects output derivatives to the reduced pair.
// cross_check() evaluates all three on sliding windows and flags windows
// where they disagree about observability.

/// Time-indexed system matrix, queried at RK4 nodes.
using MatrixSource = std::function<Eigen::MatrixXd(double)>;

/// Transition matrix of x' = A(t) x from t to s_end (RK4, fixed step).
/// Requires t <= s_end and (s_end - t) an integer multiple of step (within
/// 1e-9), else InvalidGrid. The source is queried at step midpoints, so on
/// grid-sampled sources use step = twice the grid spacing.
Eigen::MatrixXd transition_matrix(const MatrixSource& a_of_t, double t,
                                  double s_end, double step);

/// Exact transition matrix of the constant integrator chain: the series of
/// exp(shift9() * tau) terminates at the quadratic term.
Mat9 shift9_exp(double tau);

/// blkdiag(R, R, R): rotates a stacked body state block-wise.
Mat9 block_rotation(const Rotation& r);

enum class GramianLevel { full_augmented, reduced_pair, pe_phi };

const char* to_string(GramianLevel level);

/// Windowed observability Gramian (1/delta) * integral of (row * Phi)^T
/// (row * Phi), trapezoidal on the transition-matrix grid. Symmetric PSD by
/// construction. Dimension 13, 9 or 3 depending on level.
struct GramianReport {
  double t_start = 0.0;
  double delta = 0.0;
  GramianLevel level = GramianLevel::full_augmented;
  Eigen::MatrixXd gramian;
  double min_eig = 0.0;
};

/// Evaluate one windowed Gramian on a noiseless truth grid with spacing dt.
/// The window [t, t+delta] must be grid-aligned and span an even number of
/// grid steps (the transition matrix advances two samples per RK4 step);
/// otherwise InvalidGrid.
GramianReport gramian(GramianLevel level, double t, double delta,
                      const std::vector<RigidBodyTruth>& run, double dt);

/// First block of the fourth output-derivative row: the excitation signal
///   phi = a_ddot + 2 [w]x a_dot + ([w]x^2 + [w_dot]x) a
/// (all body-frame). Persistency of excitation of phi is the strongest and
/// simplest of the three observability certificates.
Vec3 pe_signal(const RigidBodyTruth& sample);

/// Closed form of the fourth derivative row,
///   r4 = [ phi^T,  4 a_dot^T - 4 a^T [w]x,  6 a^T ],
/// used to cross-check the finite-difference recursion.
RowVec9 closed_form_r4(const RigidBodyTruth& sample);

/// Output-derivative rows r1..r4 on the whole grid, built by the recursion
///   r_{i+1} = r_i A(t) + dr_i/dt + (row i of the coupling block),
/// with the time derivative taken by central differences (one-sided
/// second-order stencils at the ends). numeric[3] is the recursive r4;
/// closed_r4 is the analytic row at the same sample. Throws InvalidGrid on
/// fewer than three samples or dt <= 0.
struct RRows {
  std::array<RowVec9, 4> numeric;
  RowVec9 closed_r4;
};
std::vector<RRows> r_recursion(const std::vector<RigidBodyTruth>& run,
                               double dt);

/// PE margin of phi over [t, t+delta5]: report of the 3x3 Gram matrix
/// (1/delta5) * integral of phi phi^T and its smallest eigenvalue.
GramianReport pe_margin(const std::vector<RigidBodyTruth>& run, double dt,
                        double t, double delta5);

/// The subspace on which a nilpotent pair (A, H) must be excited: with
/// L_k the intersection of Ker(H A^i) over i >= k+1, the union of the
/// images of H A^k restricted to L_k for k below the nilpotency index q.
/// Rank decisions use SVD with tolerance 1e-10 * (largest singular value).
struct ESetBasis {
  int q = 0;  // smallest power with A^q = 0
  std::vector<std::pair<int, Eigen::MatrixXd>> terms;  // (k, orthonormal basis)
  Eigen::MatrixXd union_basis;  // orthonormal basis of the span of all terms
};

/// Throws NotNilpotent if no power of A up to its dimension vanishes, and
/// NotKalmanObservable if the stacked observability matrix of (A, H) is rank
/// deficient.
ESetBasis e_set(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h);

/// Principal angles (radians, ascending) between the column spans of two
/// orthonormal bases. Equal subspaces give all angles < 1e-8.
Eigen::VectorXd principal_angles(const Eigen::MatrixXd& u,
                                 const Eigen::MatrixXd& v);

/// Smallest value of x^T W x over unit vectors x in the span of the basis
/// columns: the Gramian margin restricted to an excitation subspace.
double restricted_margin(const GramianReport& report,
                         const Eigen::MatrixXd& basis);

/// Frobenius residual between the integrated body-block transition matrix
/// over [t, s_end] and its rotated-chain factorization
///   Phi(s,t) = blkdiag(R(s))^T exp(shift9 (s-t)) blkdiag(R(t)).
double factorization_residual(const std::vector<RigidBodyTruth>& run,
                              double dt, double t, double s_end);

/// One window of the three-level comparison.
struct WindowCheck {
  double t_start = 0.0;
  double delta = 0.0;
  double full_min = 0.0;
  double reduced_min = 0.0;
  double pe_min = 0.0;
  double restricted_min = 0.0;  // reduced Gramian on the excitation subspace
  bool consistent = false;
};

struct CrossCheckReport {
  std::vector<WindowCheck> windows;
  double tolerance = 0.0;
  bool all_consistent = false;
};

/// Evaluate all three margins on each (t_start, delta) window and flag
/// windows where one level calls the system observable (margin > tolerance)
/// while another calls it degenerate (margin <= tolerance).
CrossCheckReport cross_check(
    const std::vector<RigidBodyTruth>& run, double dt,
    const std::vector<std::pair<double, double>>& windows,
    double tolerance = 1e-8);

}  // namespace rnav
