#pragma once

#include "rnav/errors.hpp"
#include "rnav/types.hpp"

namespace rnav {

/// 3x3 cross-product matrix: skew(v) * w == v x w.
Mat3 skew(const Vec3& v);

/// Inverse of skew. Throws NotAntisymmetric if ||M + M^T||_F > 1e-9.
Vec3 vex(const Mat3& m);

/// Axial vector of an arbitrary matrix: vex of its antisymmetric part,
/// i.e. axial(A) = vex((A - A^T)/2). Defined for any 3x3 input.
Vec3 axial(const Mat3& m);

/// Proper rotation matrix with invariants enforced at construction:
/// ||R^T R - I||_F <= 1e-9 and |det R - 1| <= 1e-9.
class Rotation {
 public:
  Rotation() : r_(Mat3::Identity()) {}

  /// Validating factory; throws Degenerate if the invariants fail.
  static Rotation from_matrix(const Mat3& m);

  const Mat3& matrix() const { return r_; }
  Mat3 transposed() const { return r_.transpose(); }

  Vec3 operator*(const Vec3& v) const { return r_ * v; }
  Rotation operator*(const Rotation& o) const;

  /// Largest invariant violation, max(||R^T R - I||_F, |det R - 1|).
  double invariant_error() const;

 private:
  explicit Rotation(const Mat3& m) : r_(m) {}
  Mat3 r_;
};

/// Exponential map via the Rodrigues formula. For ||v|| < 1e-8 the
/// sin(t)/t and (1-cos(t))/t^2 factors use their 2nd-order Taylor series.
Rotation exp_so3(const Vec3& v);

/// Nearest proper rotation (orthogonal polar factor, computed by SVD with
/// determinant sign correction). Throws Degenerate when det(M) <= 0 or M is
/// numerically rank-deficient.
Rotation project_to_so3(const Mat3& m);

/// Geodesic angle of a rotation, acos((trace - 1)/2) with the argument
/// clamped to [-1, 1]. Range [0, pi].
double rotation_angle(const Rotation& r);

}  // namespace rnav
