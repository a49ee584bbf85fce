#include "rnav/observability.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rnav/errors.hpp"

namespace rnav {
namespace {

constexpr double kAlignTol = 1e-9;

// Index of a nominally grid-aligned time; rejects off-grid queries instead of
// interpolating, so every evaluation uses exact sample data.
int grid_index(std::size_t n_samples, double dt, double tau) {
  const long i = std::lround(tau / dt);
  if (std::abs(tau - static_cast<double>(i) * dt) >
      kAlignTol * (1.0 + std::abs(tau)))
    throw InvalidGrid("observability: time not on the sample grid");
  if (i < 0 || static_cast<std::size_t>(i) >= n_samples)
    throw InvalidGrid("observability: time outside the sample grid");
  return static_cast<int>(i);
}

Eigen::MatrixXd rk4_phi_step(const Eigen::MatrixXd& a_left,
                             const Eigen::MatrixXd& a_mid,
                             const Eigen::MatrixXd& a_right, double h,
                             const Eigen::MatrixXd& phi) {
  const Eigen::MatrixXd k1 = a_left * phi;
  const Eigen::MatrixXd k2 = a_mid * (phi + 0.5 * h * k1);
  const Eigen::MatrixXd k3 = a_mid * (phi + 0.5 * h * k2);
  const Eigen::MatrixXd k4 = a_right * (phi + h * k3);
  return phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Per-level sample accessors for the Gramian accumulation.
struct GramLevel {
  int dim = 0;
  std::function<Eigen::MatrixXd(int)> a_at;
  std::function<Eigen::RowVectorXd(int)> row_at;
};

GramLevel make_level(GramianLevel level,
                     const std::vector<RigidBodyTruth>& run) {
  GramLevel g;
  switch (level) {
    case GramianLevel::full_augmented:
      g.dim = kAugDim;
      g.a_at = [&run](int i) -> Eigen::MatrixXd {
        return assemble_ltv(run[i].omega, run[i].a_b, 0.0).a;
      };
      g.row_at = [](int) -> Eigen::RowVectorXd {
        Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(kAugDim);
        c(0) = 1.0;
        return c;
      };
      break;
    case GramianLevel::reduced_pair:
      g.dim = kBodyDim;
      g.a_at = [](int) -> Eigen::MatrixXd { return shift9(); };
      g.row_at = [&run](int i) -> Eigen::RowVectorXd {
        return closed_form_r4(run[i]) *
               block_rotation(run[i].R).transpose();
      };
      break;
    case GramianLevel::pe_phi:
      g.dim = 3;
      g.a_at = [](int) -> Eigen::MatrixXd {
        return Eigen::MatrixXd::Zero(3, 3);
      };
      g.row_at = [&run](int i) -> Eigen::RowVectorXd {
        return pe_signal(run[i]).transpose();
      };
      break;
  }
  return g;
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m, int n) {
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const double tol = 1e-10 * svd.singularValues()(0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m) {
  if (m.cols() == 0 || m.norm() == 0.0)
    return Eigen::MatrixXd::Zero(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const double tol = 1e-10 * svd.singularValues()(0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

double smallest_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Eigen::MatrixXd transition_matrix(const MatrixSource& a_of_t, double t,
                                  double s_end, double step) {
  if (s_end < t) throw InvalidGrid("transition_matrix: s_end before t");
  if (!(step > 0.0)) throw InvalidGrid("transition_matrix: step must be > 0");
  const double span = s_end - t;
  const long n = std::lround(span / step);
  if (std::abs(span - static_cast<double>(n) * step) >
      kAlignTol * (1.0 + span))
    throw InvalidGrid("transition_matrix: span not a multiple of step");

  Eigen::MatrixXd a0 = a_of_t(t);
  Eigen::MatrixXd phi =
      Eigen::MatrixXd::Identity(a0.rows(), a0.rows());
  double tau = t;
  for (long k = 0; k < n; ++k) {
    const Eigen::MatrixXd a_mid = a_of_t(tau + 0.5 * step);
    const Eigen::MatrixXd a_right = a_of_t(tau + step);
    phi = rk4_phi_step(a0, a_mid, a_right, step, phi);
    a0 = a_right;
    tau += step;
  }
  return phi;
}

Mat9 shift9_exp(double tau) {
  const Mat9 s = shift9();
  return Mat9::Identity() + tau * s + (0.5 * tau * tau) * (s * s);
}

Mat9 block_rotation(const Rotation& r) {
  Mat9 out = Mat9::Zero();
  for (int b = 0; b < 3; ++b) out.block<3, 3>(3 * b, 3 * b) = r.matrix();
  return out;
}

const char* to_string(GramianLevel level) {
  switch (level) {
    case GramianLevel::full_augmented: return "full_augmented";
    case GramianLevel::reduced_pair: return "reduced_pair";
    case GramianLevel::pe_phi: return "pe_phi";
  }
  return "unknown";
}

GramianReport gramian(GramianLevel level, double t, double delta,
                      const std::vector<RigidBodyTruth>& run, double dt) {
  if (!(delta > 0.0)) throw InvalidGrid("gramian: delta must be positive");
  const int i0 = grid_index(run.size(), dt, t);
  const long n_steps = std::lround(delta / dt);
  if (std::abs(delta - static_cast<double>(n_steps) * dt) >
      kAlignTol * (1.0 + delta))
    throw InvalidGrid("gramian: window not a multiple of the grid step");
  if (n_steps < 2 || n_steps % 2 != 0)
    throw InvalidGrid("gramian: window must span an even number of steps");
  if (i0 + n_steps >= static_cast<long>(run.size()))
    throw InvalidGrid("gramian: window extends past the run");

  const GramLevel g = make_level(level, run);
  const double h = 2.0 * dt;
  const long m = n_steps / 2;

  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(g.dim, g.dim);
  Eigen::RowVectorXd rp = g.row_at(i0);
  Eigen::MatrixXd gram = (0.5 * h) * (rp.transpose() * rp);
  for (long j = 1; j <= m; ++j) {
    const int base = i0 + static_cast<int>(2 * (j - 1));
    phi = rk4_phi_step(g.a_at(base), g.a_at(base + 1), g.a_at(base + 2), h,
                       phi);
    rp = g.row_at(base + 2) * phi;
    const double w = (j == m) ? 0.5 : 1.0;
    gram += (w * h) * (rp.transpose() * rp);
  }
  gram /= delta;
  gram = (0.5 * (gram + gram.transpose())).eval();

  GramianReport report;
  report.t_start = t;
  report.delta = delta;
  report.level = level;
  report.gramian = gram;
  report.min_eig = smallest_eigenvalue(gram);
  return report;
}

Vec3 pe_signal(const RigidBodyTruth& sample) {
  const Mat3 w = skew(sample.omega);
  return sample.a_b_ddot + 2.0 * w * sample.a_b_dot +
         (w * w + skew(sample.omega_dot)) * sample.a_b;
}

RowVec9 closed_form_r4(const RigidBodyTruth& sample) {
  RowVec9 r;
  r.segment<3>(0) = pe_signal(sample).transpose();
  r.segment<3>(3) = 4.0 * sample.a_b_dot.transpose() -
                    4.0 * sample.a_b.transpose() * skew(sample.omega);
  r.segment<3>(6) = 6.0 * sample.a_b.transpose();
  return r;
}

std::vector<RRows> r_recursion(const std::vector<RigidBodyTruth>& run,
                               double dt) {
  const std::size_t n = run.size();
  if (n < 3 || !(dt > 0.0))
    throw InvalidGrid("r_recursion: need at least three samples and dt > 0");

  std::vector<RRows> out(n);
  std::vector<RowVec9> cur(n, RowVec9::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    out[k].numeric[0] = cur[k];
    out[k].closed_r4 = closed_form_r4(run[k]);
  }

  std::vector<RowVec9> dcur(n);
  std::vector<RowVec9> next(n);
  for (int level = 0; level < 3; ++level) {
    // d(cur)/dt: central differences, one-sided 2nd order at the ends.
    dcur[0] = (-3.0 * cur[0] + 4.0 * cur[1] - cur[2]) / (2.0 * dt);
    dcur[n - 1] = (3.0 * cur[n - 1] - 4.0 * cur[n - 2] + cur[n - 3]) /
                  (2.0 * dt);
    for (std::size_t k = 1; k + 1 < n; ++k)
      dcur[k] = (cur[k + 1] - cur[k - 1]) / (2.0 * dt);

    for (std::size_t k = 0; k < n; ++k) {
      const Mat9 a = body_dynamics(run[k].omega);
      const auto rows = coupling_rows(run[k].a_b);
      next[k] = cur[k] * a + dcur[k] + rows.row(level + 1);
      out[k].numeric[level + 1] = next[k];
    }
    cur.swap(next);
  }
  return out;
}

GramianReport pe_margin(const std::vector<RigidBodyTruth>& run, double dt,
                        double t, double delta5) {
  return gramian(GramianLevel::pe_phi, t, delta5, run, dt);
}

ESetBasis e_set(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || h.cols() != n)
    throw InvalidGrid("e_set: dimension mismatch");

  // Powers of A up to the nilpotency index.
  std::vector<Eigen::MatrixXd> powers;
  powers.push_back(Eigen::MatrixXd::Identity(n, n));
  int q = -1;
  for (int k = 1; k <= n; ++k) {
    powers.push_back(a * powers.back());
    if (powers.back().norm() <= 1e-12 * std::pow(1.0 + a.norm(), k)) {
      q = k;
      break;
    }
  }
  if (q < 0) throw NotNilpotent("e_set: matrix is not nilpotent");

  // Kalman observability of the stacked derivative rows.
  const int m = static_cast<int>(h.rows());
  Eigen::MatrixXd stacked(m * n, n);
  for (int k = 0; k < n; ++k)
    stacked.middleRows(m * k, m) =
        h * (k < static_cast<int>(powers.size()) ? powers[k]
                                                 : Eigen::MatrixXd::Zero(n, n));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const double tol = 1e-10 * svd.singularValues()(0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  if (rank < n)
    throw NotKalmanObservable("e_set: pair is not Kalman observable");

  ESetBasis basis;
  basis.q = q;
  Eigen::MatrixXd collected(m, 0);
  for (int k = 0; k < q; ++k) {
    // L_k: joint kernel of H A^i for i >= k+1 (powers >= q vanish).
    const int rows_above = q - 1 - k;
    Eigen::MatrixXd constraints(m * std::max(rows_above, 0), n);
    for (int i = k + 1; i <= q - 1; ++i)
      constraints.middleRows(m * (i - k - 1), m) = h * powers[i];
    const Eigen::MatrixXd lk = kernel_basis(constraints, n);
    const Eigen::MatrixXd image = column_basis(h * powers[k] * lk);
    basis.terms.emplace_back(k, image);
    if (image.cols() > 0) {
      Eigen::MatrixXd merged(m, collected.cols() + image.cols());
      merged << collected, image;
      collected = merged;
    }
  }
  basis.union_basis = column_basis(collected);
  return basis;
}

Eigen::VectorXd principal_angles(const Eigen::MatrixXd& u,
                                 const Eigen::MatrixXd& v) {
  const int k = static_cast<int>(std::min(u.cols(), v.cols()));
  if (k == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u.transpose() * v);
  Eigen::VectorXd angles(k);
  for (int i = 0; i < k; ++i)
    angles(i) = std::acos(std::clamp(svd.singularValues()(i), -1.0, 1.0));
  return angles;
}

double restricted_margin(const GramianReport& report,
                         const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0)
    throw Degenerate("restricted_margin: empty excitation basis");
  if (basis.rows() != report.gramian.rows())
    throw InvalidGrid("restricted_margin: basis/gramian dimension mismatch");
  return smallest_eigenvalue(basis.transpose() * report.gramian * basis);
}

double factorization_residual(const std::vector<RigidBodyTruth>& run,
                              double dt, double t, double s_end) {
  const int i_t = grid_index(run.size(), dt, t);
  const int i_s = grid_index(run.size(), dt, s_end);
  const MatrixSource source = [&run, dt](double tau) -> Eigen::MatrixXd {
    return body_dynamics(run[grid_index(run.size(), dt, tau)].omega);
  };
  const Eigen::MatrixXd phi = transition_matrix(source, t, s_end, 2.0 * dt);
  const Mat9 target = block_rotation(run[i_s].R).transpose() *
                      shift9_exp(s_end - t) * block_rotation(run[i_t].R);
  return (phi - target).norm();
}

CrossCheckReport cross_check(
    const std::vector<RigidBodyTruth>& run, double dt,
    const std::vector<std::pair<double, double>>& windows, double tolerance) {
  const ESetBasis excitation =
      e_set(shift9(), Eigen::MatrixXd::Identity(kBodyDim, kBodyDim));

  CrossCheckReport report;
  report.tolerance = tolerance;
  report.all_consistent = true;
  for (const auto& [t, delta] : windows) {
    WindowCheck w;
    w.t_start = t;
    w.delta = delta;
    w.full_min = gramian(GramianLevel::full_augmented, t, delta, run, dt)
                     .min_eig;
    const GramianReport reduced =
        gramian(GramianLevel::reduced_pair, t, delta, run, dt);
    w.reduced_min = reduced.min_eig;
    w.pe_min = gramian(GramianLevel::pe_phi, t, delta, run, dt).min_eig;
    w.restricted_min = restricted_margin(reduced, excitation.union_basis);
    const bool pos_full = w.full_min > tolerance;
    const bool pos_reduced = w.reduced_min > tolerance;
    const bool pos_pe = w.pe_min > tolerance;
    w.consistent = (pos_full == pos_reduced) && (pos_reduced == pos_pe);
    report.all_consistent = report.all_consistent && w.consistent;
    report.windows.push_back(w);
  }
  return report;
}

}  // namespace rnav
