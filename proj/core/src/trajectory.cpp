#include "rnav/trajectory.hpp"

#include <cmath>
#include <numbers>

namespace rnav {

double AxisSignal::eval(double t, int deriv_order) const {
  double out = 0.0;
  switch (deriv_order) {
    case 0:
      out = c0 + c1 * t + c2 * t * t;
      break;
    case 1:
      out = c1 + 2.0 * c2 * t;
      break;
    case 2:
      out = 2.0 * c2;
      break;
    default:
      break;  // polynomial part is quadratic
  }
  // d^k/dt^k [A sin(w t + p)] = A w^k sin(w t + p + k pi/2)
  const double shift = deriv_order * 0.5 * std::numbers::pi;
  for (const auto& s : terms) {
    out += s.amp * std::pow(s.freq, deriv_order) *
           std::sin(s.freq * t + s.phase + shift);
  }
  return out;
}

Vec3 TrajectorySpec::position(double t, int deriv_order) const {
  return {pos[0].eval(t, deriv_order), pos[1].eval(t, deriv_order),
          pos[2].eval(t, deriv_order)};
}

Vec3 TrajectorySpec::angular_velocity(double t, int deriv_order) const {
  return {omega[0].eval(t, deriv_order), omega[1].eval(t, deriv_order),
          omega[2].eval(t, deriv_order)};
}

TrajectorySpec eight_trajectory() {
  using std::numbers::pi;
  TrajectorySpec spec;
  const double a3 = std::sqrt(3.0) / 4.0;
  spec.pos[0].terms = {{1.0, 8.0, pi / 2.0}};  // cos(8t)
  spec.pos[1].terms = {{0.3, 16.0, pi / 12.0}};
  spec.pos[1].c0 = -0.3 * std::sin(pi / 12.0);  // start at y = 0 exactly
  spec.pos[2].terms = {{-a3, 16.0, -pi / 9.0}};
  spec.pos[2].c0 = -a3 * std::sin(pi / 9.0);  // start at z = 0 exactly
  spec.omega[0].terms = {{1.0, 0.1, pi}};
  spec.omega[1].terms = {{0.5, 0.2, 0.0}};
  spec.omega[2].terms = {{0.1, 0.3, pi / 3.0}};
  spec.r0 = exp_so3(Vec3(0.0, pi / 2.0, 0.0));
  return spec;
}

TrajectorySpec free_fall_trajectory(const Vec3& p0, const Vec3& v0,
                                    const Vec3& gravity_i) {
  TrajectorySpec spec;
  for (int i = 0; i < 3; ++i) {
    spec.pos[i].c0 = p0(i);
    spec.pos[i].c1 = v0(i);
    spec.pos[i].c2 = 0.5 * gravity_i(i);
  }
  return spec;
}

}  // namespace rnav
