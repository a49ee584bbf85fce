#include "rnav/scenario.hpp"

#include <cmath>

#include "rnav/errors.hpp"

namespace rnav {

void WorldConstants::validate() const {
  if (std::abs(mag_dir_i.norm() - 1.0) > 1e-12) {
    throw BadConfig("WorldConstants: mag_dir_i must be a unit vector");
  }
  if (mag_dir_i.cross(gravity_i).norm() <= 1e-6) {
    throw BadConfig("WorldConstants: mag_dir_i and gravity_i are collinear");
  }
}

namespace {

// One RK4 step of R' = R*skew(omega(t)), reprojected onto SO(3).
Rotation rotation_step(const TrajectorySpec& spec, const Rotation& r, double t,
                       double h) {
  const Mat3 r0 = r.matrix();
  const Mat3 w1 = skew(spec.angular_velocity(t));
  const Mat3 w2 = skew(spec.angular_velocity(t + 0.5 * h));
  const Mat3 w3 = skew(spec.angular_velocity(t + h));
  const Mat3 k1 = r0 * w1;
  const Mat3 k2 = (r0 + 0.5 * h * k1) * w2;
  const Mat3 k3 = (r0 + 0.5 * h * k2) * w2;
  const Mat3 k4 = (r0 + h * k3) * w3;
  return project_to_so3(r0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

Vec3 apparent_accel(const TrajectorySpec& spec, const WorldConstants& world,
                    const Rotation& r, double t) {
  return r.transposed() * (spec.position(t, 2) - world.gravity_i);
}

RigidBodyTruth base_sample(const TrajectorySpec& spec,
                           const WorldConstants& world, const Rotation& r,
                           double t) {
  RigidBodyTruth s;
  s.t = t;
  s.R = r;
  s.p_i = spec.position(t);
  s.v_i = spec.position(t, 1);
  s.omega = spec.angular_velocity(t);
  s.a_b = apparent_accel(spec, world, r, t);
  return s;
}

}  // namespace

RigidBodyTruth truth_at(const TrajectorySpec& spec, const WorldConstants& world,
                        double t, double h) {
  if (t < 0.0 || t > spec.horizon) {
    throw HorizonExceeded("truth_at: t outside [0, horizon]");
  }
  if (h <= 0.0) {
    throw InvalidGrid("truth_at: non-positive step");
  }

  // Integrate the attitude from 0 to t in steps of h (plus a final partial
  // step), then obtain the two neighbours t - h and t + h for the centered
  // difference stencils.
  Rotation r;  // R(0) evolves from spec.r0
  r = spec.r0;
  const auto n_full = static_cast<std::int64_t>(std::floor(t / h + 1e-9));
  double tau = 0.0;
  for (std::int64_t k = 0; k < n_full; ++k) {
    r = rotation_step(spec, r, tau, h);
    tau += h;
  }
  if (t - tau > 1e-12) {
    r = rotation_step(spec, r, tau, t - tau);
  }
  const Rotation r_prev = rotation_step(spec, r, t, -h);
  const Rotation r_next = rotation_step(spec, r, t, h);

  RigidBodyTruth s = base_sample(spec, world, r, t);
  const Vec3 a_prev = apparent_accel(spec, world, r_prev, t - h);
  const Vec3 a_next = apparent_accel(spec, world, r_next, t + h);
  s.a_b_dot = (a_next - a_prev) / (2.0 * h);
  s.a_b_ddot = (a_next - 2.0 * s.a_b + a_prev) / (h * h);
  s.omega_dot = (spec.angular_velocity(t + h) - spec.angular_velocity(t - h)) /
                (2.0 * h);
  return s;
}

std::vector<RigidBodyTruth> run_truth(const TrajectorySpec& spec,
                                      const WorldConstants& world, double dt,
                                      double T) {
  if (dt <= 0.0 || T <= 0.0) {
    throw InvalidGrid("run_truth: dt and T must be positive");
  }
  const auto n = static_cast<std::int64_t>(std::llround(T / dt));
  if (n < 1 || std::abs(n * dt - T) > 1e-9 * std::max(1.0, T)) {
    throw InvalidGrid("run_truth: T must be an integer multiple of dt");
  }
  if (T > spec.horizon) {
    throw HorizonExceeded("run_truth: T exceeds trajectory horizon");
  }

  // One continuous attitude integration over the extended grid
  // [-dt, T + dt]; the virtual end samples give every stored sample a
  // centered difference stencil.
  std::vector<Rotation> rot(static_cast<std::size_t>(n) + 3);
  rot[1] = spec.r0;
  rot[0] = rotation_step(spec, spec.r0, 0.0, -dt);
  for (std::int64_t k = 0; k <= n; ++k) {
    rot[static_cast<std::size_t>(k) + 2] =
        rotation_step(spec, rot[static_cast<std::size_t>(k) + 1],
                      static_cast<double>(k) * dt, dt);
  }

  std::vector<Vec3> accel(rot.size());
  for (std::size_t i = 0; i < rot.size(); ++i) {
    const double t = (static_cast<double>(i) - 1.0) * dt;
    accel[i] = apparent_accel(spec, world, rot[i], t);
  }

  std::vector<RigidBodyTruth> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const std::size_t i = static_cast<std::size_t>(k) + 1;
    RigidBodyTruth s = base_sample(spec, world, rot[i], t);
    s.a_b_dot = (accel[i + 1] - accel[i - 1]) / (2.0 * dt);
    s.a_b_ddot = (accel[i + 1] - 2.0 * accel[i] + accel[i - 1]) / (dt * dt);
    s.omega_dot =
        (spec.angular_velocity(t + dt) - spec.angular_velocity(t - dt)) /
        (2.0 * dt);
    out.push_back(std::move(s));
  }
  return out;
}

SensorSample sense(const RigidBodyTruth& truth, const WorldConstants& world,
                   const NoiseConfig& noise, std::uint64_t sample_index) {
  enum Stream : std::uint64_t { kGyro = 1, kAccel = 2, kMag = 3, kRange = 4 };

  SensorSample s;
  s.t = truth.t;
  const NormalStream gyro(noise.seed, kGyro);
  const NormalStream accel(noise.seed, kAccel);
  const NormalStream mag(noise.seed, kMag);
  const NormalStream range(noise.seed, kRange);

  const Vec3 mag_b = truth.R.transposed() * world.mag_dir_i;
  for (int i = 0; i < 3; ++i) {
    const auto axis = static_cast<std::uint64_t>(i);
    s.gyro(i) = truth.omega(i) + noise.sigma_omega * gyro.normal(sample_index, axis);
    s.accel(i) = truth.a_b(i) + noise.sigma_acc * accel.normal(sample_index, axis);
    s.mag(i) = mag_b(i) + noise.sigma_mag * mag.normal(sample_index, axis);
  }
  const double d = (truth.p_i - world.anchor_i).norm() +
                   noise.sigma_uwb * range.normal(sample_index, 0);
  s.range = std::max(0.0, d);
  return s;
}

}  // namespace rnav
