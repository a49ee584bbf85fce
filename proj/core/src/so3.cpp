#include "rnav/so3.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace rnav {

namespace {
constexpr double kAntisymTol = 1e-9;
constexpr double kRotationTol = 1e-9;
constexpr double kSmallAngle = 1e-8;
}  // namespace

Mat3 skew(const Vec3& v) {
  Mat3 m;
  // clang-format off
  m <<     0, -v(2),  v(1),
        v(2),     0, -v(0),
       -v(1),  v(0),     0;
  // clang-format on
  return m;
}

Vec3 vex(const Mat3& m) {
  const double sym_norm = (m + m.transpose()).norm();
  if (sym_norm > kAntisymTol) {
    throw NotAntisymmetric("vex: ||M + M^T|| = " + std::to_string(sym_norm));
  }
  return axial(m);
}

Vec3 axial(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Rotation Rotation::from_matrix(const Mat3& m) {
  Rotation r(m);
  const double err = r.invariant_error();
  if (err > kRotationTol) {
    throw Degenerate("Rotation: invariant violation " + std::to_string(err));
  }
  return r;
}

Rotation Rotation::operator*(const Rotation& o) const {
  return Rotation(Mat3(r_ * o.r_));
}

double Rotation::invariant_error() const {
  const double orth = (r_.transpose() * r_ - Mat3::Identity()).norm();
  const double det = std::abs(r_.determinant() - 1.0);
  return std::max(orth, det);
}

Rotation exp_so3(const Vec3& v) {
  const double theta = v.norm();
  const double theta2 = theta * theta;
  double a, b;  // sin(t)/t and (1 - cos(t))/t^2
  if (theta < kSmallAngle) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 vx = skew(v);
  return Rotation::from_matrix(Mat3::Identity() + a * vx + b * vx * vx);
}

Rotation project_to_so3(const Mat3& m) {
  if (m.determinant() <= 0.0) {
    throw Degenerate("project_to_so3: non-positive determinant");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 1e-12 * sv(0)) {
    throw Degenerate("project_to_so3: rank-deficient input");
  }
  const Mat3 uvt = svd.matrixU() * svd.matrixV().transpose();
  Mat3 r = svd.matrixU() *
           Vec3(1.0, 1.0, uvt.determinant()).asDiagonal() *
           svd.matrixV().transpose();
  return Rotation::from_matrix(r);
}

double rotation_angle(const Rotation& r) {
  const double c = 0.5 * (r.matrix().trace() - 1.0);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace rnav
