#include "rnav/trajectory.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace rnav {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(AxisSignal, PolynomialDerivatives) {
  AxisSignal s;
  s.c0 = 2.0;
  s.c1 = -3.0;
  s.c2 = 0.5;
  const double t = 1.7;
  EXPECT_DOUBLE_EQ(s.eval(t, 0), 2.0 - 3.0 * t + 0.5 * t * t);
  EXPECT_DOUBLE_EQ(s.eval(t, 1), -3.0 + t);
  EXPECT_DOUBLE_EQ(s.eval(t, 2), 1.0);
  EXPECT_DOUBLE_EQ(s.eval(t, 3), 0.0);
  EXPECT_DOUBLE_EQ(s.eval(t, 7), 0.0);
}

TEST(AxisSignal, SinusoidDerivativesCycle) {
  AxisSignal s;
  s.terms.push_back({1.5, 4.0, 0.3});
  const double t = 0.8;
  EXPECT_NEAR(s.eval(t, 0), 1.5 * std::sin(4.0 * t + 0.3), 1e-15);
  EXPECT_NEAR(s.eval(t, 1), 6.0 * std::cos(4.0 * t + 0.3), 1e-13);
  EXPECT_NEAR(s.eval(t, 2), -24.0 * std::sin(4.0 * t + 0.3), 1e-13);
  EXPECT_NEAR(s.eval(t, 3), -96.0 * std::cos(4.0 * t + 0.3), 1e-12);
  EXPECT_NEAR(s.eval(t, 4), 384.0 * std::sin(4.0 * t + 0.3), 1e-12);
}

TEST(AxisSignal, DerivativeMatchesFiniteDifference) {
  AxisSignal s;
  s.c1 = 0.2;
  s.c2 = -0.1;
  s.terms.push_back({2.0, 3.0, 1.0});
  s.terms.push_back({-0.5, 11.0, -0.4});
  const double t = 2.3, h = 1e-6;
  for (int d = 0; d < 3; ++d) {
    const double fd = (s.eval(t + h, d) - s.eval(t - h, d)) / (2.0 * h);
    EXPECT_NEAR(s.eval(t, d + 1), fd, 1e-3);
  }
}

TEST(EightTrajectory, InitialConditions) {
  const TrajectorySpec traj = eight_trajectory();

  EXPECT_LT((traj.position(0.0) - Vec3{1, 0, 0}).norm(), 1e-15);

  // Velocity from the raw sinusoid parameters.
  const Vec3 v0{0.0, 0.3 * 16.0 * std::cos(kPi / 12.0),
                -(std::sqrt(3.0) / 4.0) * 16.0 * std::cos(-kPi / 9.0)};
  EXPECT_LT((traj.position(0.0, 1) - v0).norm(), 1e-12);

  const Vec3 w0{std::sin(kPi), 0.0, 0.1 * std::sin(kPi / 3.0)};
  EXPECT_LT((traj.angular_velocity(0.0) - w0).norm(), 1e-15);

  // Initial attitude: quarter turn about y.
  EXPECT_LT((traj.r0.matrix() - exp_so3(kPi / 2.0 * Vec3::UnitY()).matrix())
                .norm(),
            1e-14);
}

TEST(EightTrajectory, TranslationIsPeriodic) {
  const TrajectorySpec traj = eight_trajectory();
  const double period = 2.0 * kPi / 8.0;  // slow axis; fast axis fits twice
  EXPECT_LT((traj.position(0.0) - traj.position(period)).norm(), 1e-12);
  EXPECT_LT((traj.position(1.3) - traj.position(1.3 + period)).norm(), 1e-11);
}

TEST(FreeFallTrajectory, BallisticArc) {
  const Vec3 p0{1, 2, 3}, v0{0.5, 0, -0.1}, g{0, 0, 9.81};
  const TrajectorySpec traj = free_fall_trajectory(p0, v0, g);

  EXPECT_LT((traj.position(0.0) - p0).norm(), 1e-15);
  EXPECT_LT((traj.position(0.0, 1) - v0).norm(), 1e-15);
  // Acceleration equals gravity at all times, so the specific force is zero.
  EXPECT_LT((traj.position(0.7, 2) - g).norm(), 1e-15);
  EXPECT_LT((traj.position(2.9, 2) - g).norm(), 1e-15);
  EXPECT_LT(traj.angular_velocity(1.0).norm(), 1e-15);

  const double t = 1.25;
  EXPECT_LT((traj.position(t) - (p0 + v0 * t + 0.5 * g * t * t)).norm(),
            1e-12);
}

TEST(TrajectorySpec, DefaultHorizonIsUnbounded) {
  EXPECT_TRUE(std::isinf(TrajectorySpec{}.horizon));
  // eval itself has no domain restriction; the horizon is enforced by the
  // scenario layer.
  EXPECT_NO_THROW(eight_trajectory().position(1e6));
}

}  // namespace
}  // namespace rnav
