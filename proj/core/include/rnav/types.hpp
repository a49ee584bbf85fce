#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>  // cross products

namespace rnav {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Body-frame state (p, v, g) stacks to 9; with the four auxiliary output
// coordinates prepended the estimator state is 13-dimensional.
inline constexpr int kBodyDim = 9;
inline constexpr int kAuxDim = 4;
inline constexpr int kAugDim = kAuxDim + kBodyDim;

using Vec9 = Eigen::Matrix<double, kBodyDim, 1>;
using Mat9 = Eigen::Matrix<double, kBodyDim, kBodyDim>;
using RowVec9 = Eigen::Matrix<double, 1, kBodyDim>;
using Vec13 = Eigen::Matrix<double, kAugDim, 1>;
using Mat13 = Eigen::Matrix<double, kAugDim, kAugDim>;
using RowVec13 = Eigen::Matrix<double, 1, kAugDim>;

}  // namespace rnav
