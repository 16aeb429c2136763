#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "gerstner/errors.hpp"

namespace gerstner {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Raw physical constants of one wave, SI units. Defaults are the equatorial
/// values (Earth rotation 7.3e-5 rad/s, g = 9.8 m/s^2) with a 1 m^-1 wavenumber
/// and a strictly submerged surface label b0 = -0.1/k.
template <std::floating_point Scalar>
struct WaveConstants {
  Scalar k = 1;
  Scalar omega = Scalar(7.3e-5);
  Scalar g = Scalar(9.8);
  Scalar rho = 1000;
  Scalar p0 = 101325;
  Scalar b0 = Scalar(-0.1);
};

/// Dispersion root c of k c^2 + 2 omega c - g = 0, c > 0.
///
/// Evaluated as g / (sqrt(omega^2 + k g) + omega), which is algebraically
/// (sqrt(omega^2 + k g) - omega) / k but free of cancellation when omega^2 is
/// comparable to k g.
template <std::floating_point Scalar>
Scalar wave_speed(Scalar k, Scalar omega, Scalar g) {
  using std::sqrt;
  return g / (sqrt(omega * omega + k * g) + omega);
}

/// Validated, immutable wave description. The wave speed is derived once at
/// construction.
template <std::floating_point Scalar>
class WaveParameters {
 public:
  WaveParameters() : WaveParameters(WaveConstants<Scalar>{}) {}

  explicit WaveParameters(const WaveConstants<Scalar>& constants) : constants_(constants) {
    const auto& p = constants_;
    if (!(std::isfinite(p.k) && p.k > 0)) throw ParameterError("wavenumber k must be finite and > 0");
    if (!(std::isfinite(p.omega) && p.omega >= 0)) throw ParameterError("rotation rate omega must be finite and >= 0");
    if (!(std::isfinite(p.g) && p.g > 0)) throw ParameterError("gravity g must be finite and > 0");
    if (!(std::isfinite(p.rho) && p.rho > 0)) throw ParameterError("density rho must be finite and > 0");
    if (!std::isfinite(p.p0)) throw ParameterError("atmospheric pressure p0 must be finite");
    if (!(std::isfinite(p.b0) && p.b0 <= 0)) throw ParameterError("surface label b0 must be finite and <= 0");
    speed_ = gerstner::wave_speed(p.k, p.omega, p.g);
  }

  Scalar k() const { return constants_.k; }
  Scalar omega() const { return constants_.omega; }
  Scalar g() const { return constants_.g; }
  Scalar rho() const { return constants_.rho; }
  Scalar p0() const { return constants_.p0; }
  Scalar b0() const { return constants_.b0; }
  const WaveConstants<Scalar>& constants() const { return constants_; }

  Scalar speed() const { return speed_; }
  Scalar wavelength() const { return 2 * std::numbers::pi_v<Scalar> / k(); }
  /// Orbital period 2 pi / (k c) of every particle.
  Scalar period() const { return 2 * std::numbers::pi_v<Scalar> / (k() * speed_); }
  /// Orbit radius e^{k b0}/k of a surface particle.
  Scalar surface_amplitude() const { return std::exp(k() * b0()) / k(); }

 private:
  WaveConstants<Scalar> constants_;
  Scalar speed_{};
};

/// Particle label (a, b) in the label strip R x (-inf, b0].
template <std::floating_point Scalar>
struct LagrangianLabel {
  Scalar a{};
  Scalar b{};
};

/// Label constructor that enforces b <= b0.
template <std::floating_point Scalar>
LagrangianLabel<Scalar> make_label(Scalar a, Scalar b, const WaveParameters<Scalar>& params) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw ParameterError("label coordinates must be finite");
  if (b > params.b0()) {
    throw ParameterError("label depth b = " + std::to_string(b) + " lies above the surface label b0 = " +
                         std::to_string(params.b0()));
  }
  return {a, b};
}

/// Physical position (x, z) at time t.
template <std::floating_point Scalar>
struct EulerianPoint {
  Scalar t{};
  Scalar x{};
  Scalar z{};
};

using WaveConstantsd = WaveConstants<double>;
using WaveParametersd = WaveParameters<double>;
using LagrangianLabeld = LagrangianLabel<double>;
using EulerianPointd = EulerianPoint<double>;
using Vector2d = Vector2<double>;
using Matrix2d = Matrix2<double>;

}  // namespace gerstner
