#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "gerstner/parameters.hpp"

namespace gerstner {

template <std::floating_point Scalar>
Scalar wave_speed(const WaveParameters<Scalar>& params) {
  return wave_speed(params.k(), params.omega(), params.g());
}

/// k c^2 + 2 omega c - g, zero for the exact speed.
template <std::floating_point Scalar>
Scalar dispersion_residual(const WaveParameters<Scalar>& params) {
  const Scalar c = params.speed();
  return params.k() * c * c + 2 * params.omega() * c - params.g();
}

/// Orbital phase k a - k c t reduced to [-pi, pi].
template <std::floating_point Scalar>
Scalar phase(Scalar t, const LagrangianLabel<Scalar>& label, const WaveParameters<Scalar>& params) {
  using std::remainder;
  const Scalar k = params.k();
  return remainder(k * label.a - k * params.speed() * t, 2 * std::numbers::pi_v<Scalar>);
}

namespace detail {

template <typename Scalar>
struct Orbit {
  Scalar amplitude;  // e^{kb}
  Scalar sin;
  Scalar cos;
};

template <typename Scalar>
Orbit<Scalar> orbit(Scalar t, const LagrangianLabel<Scalar>& label, const WaveParameters<Scalar>& params) {
  using std::cos;
  using std::exp;
  using std::sin;
  const Scalar theta = phase(t, label, params);
  return {exp(params.k() * label.b), sin(theta), cos(theta)};
}

}  // namespace detail

/// Particle position Phi(t)(a, b): a circle of radius e^{kb}/k about (a, b),
/// traversed clockwise.
template <std::floating_point Scalar>
Vector2<Scalar> flow_map(Scalar t, const LagrangianLabel<Scalar>& label, const WaveParameters<Scalar>& params) {
  const auto o = detail::orbit(t, label, params);
  const Scalar r = o.amplitude / params.k();
  return {label.a - r * o.sin, label.b + r * o.cos};
}

/// (x_t, z_t).
template <std::floating_point Scalar>
Vector2<Scalar> flow_velocity(Scalar t, const LagrangianLabel<Scalar>& label, const WaveParameters<Scalar>& params) {
  const auto o = detail::orbit(t, label, params);
  const Scalar s = params.speed() * o.amplitude;
  return {s * o.cos, s * o.sin};
}

/// (x_tt, z_tt).
template <std::floating_point Scalar>
Vector2<Scalar> flow_acceleration(Scalar t, const LagrangianLabel<Scalar>& label,
                                  const WaveParameters<Scalar>& params) {
  const auto o = detail::orbit(t, label, params);
  const Scalar c = params.speed();
  const Scalar s = params.k() * c * c * o.amplitude;
  return {s * o.sin, -s * o.cos};
}

/// Label gradient of Phi(t): [[x_a, x_b], [z_a, z_b]].
template <std::floating_point Scalar>
Matrix2<Scalar> jacobian(Scalar t, const LagrangianLabel<Scalar>& label, const WaveParameters<Scalar>& params) {
  const auto o = detail::orbit(t, label, params);
  const Scalar ec = o.amplitude * o.cos;
  const Scalar es = o.amplitude * o.sin;
  Matrix2<Scalar> m;
  m << 1 - ec, -es,
       -es, 1 + ec;
  return m;
}

/// Closed-form det of jacobian(): 1 - e^{2kb}.
template <std::floating_point Scalar>
Scalar jacobian_determinant(const LagrangianLabel<Scalar>& label, const WaveParameters<Scalar>& params) {
  using std::expm1;
  return -expm1(2 * params.k() * label.b);
}

/// Gradient of the inverse map: [[a_x, a_z], [b_x, b_z]].
/// Throws SingularityError at b >= 0, where the map is not locally invertible.
template <std::floating_point Scalar>
Matrix2<Scalar> inverse_jacobian(Scalar t, const LagrangianLabel<Scalar>& label,
                                 const WaveParameters<Scalar>& params) {
  if (label.b >= 0) throw SingularityError("inverse jacobian is singular on the label line b = 0");
  const auto o = detail::orbit(t, label, params);
  const Scalar ec = o.amplitude * o.cos;
  const Scalar es = o.amplitude * o.sin;
  Matrix2<Scalar> m;
  m << 1 + ec, es,
       es, 1 - ec;
  return m / jacobian_determinant(label, params);
}

/// Label derivatives of the particle velocity: [[x_ta, x_tb], [z_ta, z_tb]].
template <std::floating_point Scalar>
Matrix2<Scalar> velocity_label_gradient(Scalar t, const LagrangianLabel<Scalar>& label,
                                        const WaveParameters<Scalar>& params) {
  const auto o = detail::orbit(t, label, params);
  const Scalar s = params.k() * params.speed() * o.amplitude;
  Matrix2<Scalar> m;
  m << -s * o.sin, s * o.cos,
       s * o.cos, s * o.sin;
  return m;
}

/// Closed-form Eulerian velocity gradient [[u_x, u_z], [w_x, w_z]] at the
/// particle carrying `label`, by the chain rule through the inverse map.
template <std::floating_point Scalar>
Matrix2<Scalar> velocity_gradient(Scalar t, const LagrangianLabel<Scalar>& label,
                                  const WaveParameters<Scalar>& params) {
  return velocity_label_gradient(t, label, params) * inverse_jacobian(t, label, params);
}

/// Hydrostatic-plus-orbital pressure on the label line b. Independent of a and t.
template <std::floating_point Scalar>
Scalar pressure_lagrangian(Scalar b, const WaveParameters<Scalar>& params) {
  using std::exp;
  if (b > params.b0()) throw ParameterError("pressure requested above the surface label b0");
  const Scalar k = params.k();
  const Scalar c = params.speed();
  const Scalar b0 = params.b0();
  const Scalar orbital = params.rho() * (k * c * c + 2 * params.omega() * c) / (2 * k);
  return params.p0() + orbital * (exp(2 * k * b) - exp(2 * k * b0)) - params.rho() * params.g() * (b - b0);
}

/// Vorticity u_z - w_x carried by the particles on label line b:
/// -2 k c e^{2kb} / (1 - e^{2kb}). Negative, tends to 0 with depth.
template <std::floating_point Scalar>
Scalar vorticity(Scalar b, const WaveParameters<Scalar>& params) {
  using std::exp;
  using std::expm1;
  if (b >= 0) throw SingularityError("vorticity is unbounded on the label line b = 0");
  const Scalar k = params.k();
  const Scalar e2 = exp(2 * k * b);
  return 2 * k * params.speed() * e2 / expm1(2 * k * b);
}

/// Surface slope eta_x = z_a / x_a at the surface particle with label a.
template <std::floating_point Scalar>
Scalar surface_slope(Scalar t, Scalar a, const WaveParameters<Scalar>& params) {
  const Matrix2<Scalar> j = jacobian(t, LagrangianLabel<Scalar>{a, params.b0()}, params);
  if (j(0, 0) == 0) throw SingularityError("surface slope is unbounded at a cycloid cusp");
  return j(1, 0) / j(0, 0);
}

/// Everything the closed form gives at one label and time.
template <std::floating_point Scalar>
struct FlowKinematics {
  Vector2<Scalar> position;
  Vector2<Scalar> velocity;
  Vector2<Scalar> acceleration;
  Matrix2<Scalar> jacobian;
  /// Absent on the singular line b = 0.
  std::optional<Matrix2<Scalar>> inverse_jacobian;
};

template <std::floating_point Scalar>
FlowKinematics<Scalar> kinematics(Scalar t, const LagrangianLabel<Scalar>& label,
                                  const WaveParameters<Scalar>& params) {
  FlowKinematics<Scalar> out{flow_map(t, label, params), flow_velocity(t, label, params),
                             flow_acceleration(t, label, params), jacobian(t, label, params), std::nullopt};
  if (label.b < 0) out.inverse_jacobian = inverse_jacobian(t, label, params);
  return out;
}

}  // namespace gerstner
