#include "gerstner/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

namespace gerstner {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFlatDerivative = 1e-8;
constexpr int kMaxStepHalvings = 40;
constexpr int kBisectionBudget = 64;

// Residual floor set by the magnitude of the target coordinates.
double residual_floor(double tolerance, double x, double z) {
  return std::max(tolerance, 8 * kEps * (1 + std::abs(x) + std::abs(z)));
}

Vector2d map_residual(double t, const LagrangianLabeld& label, const Vector2d& target, const WaveParametersd& params) {
  return flow_map(t, label, params) - target;
}

}  // namespace

void InversionSettings::validate() const {
  if (!(tolerance > 0)) throw ParameterError("inversion tolerance must be > 0");
  if (max_iterations < 1) throw ParameterError("inversion max_iterations must be >= 1");
  if (!(domain_slack >= 0)) throw ParameterError("inversion domain_slack must be >= 0");
}

SurfaceSolve surface_solve(double t, double x, const WaveParametersd& params, const InversionSettings& settings) {
  settings.validate();
  const double k = params.k();
  const double kc = k * params.speed();
  const double e = std::exp(k * params.b0());
  const double r = e / k;
  const double step_floor = std::max(settings.tolerance, 4 * kEps * (1 + std::abs(x)));

  // a - r sin(k a - k c t) = x has exactly one root in [x - r, x + r].
  double lo = x - r;
  double hi = x + r;
  double a = x;
  double last_step = hi - lo;
  const int budget = settings.max_iterations + (settings.bisection_fallback ? kBisectionBudget : 0);

  for (int it = 1; it <= budget; ++it) {
    const double theta = std::remainder(k * a - kc * t, 2 * std::numbers::pi);
    const double f = a - r * std::sin(theta) - x;
    const double df = 1 - e * std::cos(theta);
    if (f == 0) return {params.b0() + r * std::cos(theta), a, it};
    (f < 0 ? lo : hi) = a;

    double next = a - f / df;
    const bool flat = std::abs(df) < kFlatDerivative;
    const bool outside = !(next > lo && next < hi);
    const bool slow = std::abs(2 * f) > std::abs(last_step * df);
    if (flat || outside || slow) {
      if (!settings.bisection_fallback) {
        if (flat) throw ConvergenceError("surface Newton derivative vanished at a cycloid cusp", std::abs(f), it);
        next = std::clamp(next, lo, hi);
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    last_step = next - a;
    a = next;
    if (std::abs(last_step) <= step_floor || hi - lo <= step_floor) {
      const double theta_final = std::remainder(k * a - kc * t, 2 * std::numbers::pi);
      return {params.b0() + r * std::cos(theta_final), a, it};
    }
  }
  const double theta = std::remainder(k * a - kc * t, 2 * std::numbers::pi);
  throw ConvergenceError("surface elevation did not converge", std::abs(a - r * std::sin(theta) - x), budget);
}

double surface_elevation(double t, double x, const WaveParametersd& params, const InversionSettings& settings) {
  return surface_solve(t, x, params, settings).eta;
}

bool in_domain(const EulerianPointd& point, const WaveParametersd& params, const InversionSettings& settings) {
  if (!std::isfinite(point.x) || !std::isfinite(point.z)) return false;
  // Cheap rejections against the crest and trough heights.
  const double amplitude = params.surface_amplitude();
  if (point.z < params.b0() - amplitude) return true;
  if (point.z >= params.b0() + amplitude + settings.domain_slack) return false;
  return point.z < surface_elevation(point.t, point.x, params, settings) + settings.domain_slack;
}

namespace {

// Label a on the line b whose particle sits at horizontal position x.
double label_on_line(double t, double x, double b, const WaveParametersd& params) {
  const double k = params.k();
  const double kc = k * params.speed();
  const double r = std::exp(k * b) / k;
  double lo = x - r;
  double hi = x + r;
  for (int i = 0; i < 200 && hi - lo > 4 * kEps * (1 + std::abs(x)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid - r * std::sin(std::remainder(k * mid - kc * t, 2 * std::numbers::pi)) - x;
    (f < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Nested bisection along the vertical line through x. For b < 0 the map
// a -> x is increasing and z grows with b at fixed x, so both solves are
// bracketed.
LagrangianLabeld column_solve(double t, double x, double z, const WaveParametersd& params,
                              const InversionSettings& settings) {
  const double k = params.k();
  const auto height = [&](double b) {
    const LagrangianLabeld label{label_on_line(t, x, b, params), b};
    return flow_map(t, label, params).y();
  };
  double hi = params.b0();
  double lo = std::min(z, hi) - 1 / k;
  while (height(lo) > z) lo -= 1 / k;
  for (int i = 0; i < 200 && hi - lo > settings.tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    (height(mid) < z ? lo : hi) = mid;
  }
  const double b = 0.5 * (lo + hi);
  return {label_on_line(t, x, b, params), b};
}

}  // namespace

InversionResult invert_map_detailed(const EulerianPointd& point, const WaveParametersd& params,
                                    const InversionSettings& settings) {
  settings.validate();
  if (!in_domain(point, params, settings)) {
    throw DomainError("point (t=" + std::to_string(point.t) + ", x=" + std::to_string(point.x) +
                      ", z=" + std::to_string(point.z) + ") is not below the free surface");
  }
  const double t = point.t;
  const double b0 = params.b0();
  const Vector2d target(point.x, point.z);
  const double tolerance = residual_floor(settings.tolerance, point.x, point.z);

  // Seed at (x, z), then one fixed-point correction a = x + r sin(theta),
  // b = z - r cos(theta); plain (x, z) seeds stall against b = b0 near the surface.
  LagrangianLabeld label{point.x, std::min(point.z, b0)};
  {
    const double theta = phase(t, label, params);
    const double r = std::exp(params.k() * label.b) / params.k();
    label = {point.x + r * std::sin(theta), std::min(point.z - r * std::cos(theta), b0)};
  }
  Vector2d residual = map_residual(t, label, target, params);
  double norm = residual.norm();

  // Damped Newton step restricted to b <= b0, where Phi(t) is one-to-one.
  // Returns false when no halving gives a feasible decrease.
  auto newton_step = [&]() {
    const Vector2d step = jacobian(t, label, params).fullPivLu().solve(-residual);
    double scale = 1;
    for (int h = 0; h < kMaxStepHalvings; ++h, scale *= 0.5) {
      const LagrangianLabeld trial{label.a + scale * step.x(), label.b + scale * step.y()};
      if (trial.b > b0) continue;
      const Vector2d trial_residual = map_residual(t, trial, target, params);
      const double trial_norm = trial_residual.norm();
      if (trial_norm < norm) {
        label = trial;
        residual = trial_residual;
        norm = trial_norm;
        return true;
      }
    }
    return false;
  };

  int iterations = 0;
  while (norm > tolerance && iterations < settings.max_iterations) {
    ++iterations;
    if (!newton_step()) break;
  }
  if (norm > tolerance && settings.bisection_fallback) {
    // Stalled against b = b0: restart from the bracketed column solve.
    label = column_solve(t, point.x, point.z, params, settings);
    residual = map_residual(t, label, target, params);
    norm = residual.norm();
    while (norm > tolerance && iterations < settings.max_iterations) {
      ++iterations;
      if (!newton_step()) break;
    }
  }
  if (norm > tolerance) {
    throw ConvergenceError("flow map inversion did not converge", norm, iterations);
  }
  // One polishing step pushes the residual to round-off.
  newton_step();
  return {label, iterations, norm};
}

LagrangianLabeld invert_map(const EulerianPointd& point, const WaveParametersd& params,
                            const InversionSettings& settings) {
  return invert_map_detailed(point, params, settings).label;
}

EulerianState eulerian_state(const EulerianPointd& point, const WaveParametersd& params,
                             const InversionSettings& settings) {
  const LagrangianLabeld label = invert_map(point, params, settings);
  return {label, flow_velocity(point.t, label, params), pressure_lagrangian(label.b, params)};
}

Vector2d eulerian_velocity(const EulerianPointd& point, const WaveParametersd& params,
                           const InversionSettings& settings) {
  return flow_velocity(point.t, invert_map(point, params, settings), params);
}

double eulerian_pressure(const EulerianPointd& point, const WaveParametersd& params,
                         const InversionSettings& settings) {
  return pressure_lagrangian(invert_map(point, params, settings).b, params);
}

const char* to_string(ProfileKind kind) {
  return kind == ProfileKind::cycloid ? "cycloid" : "trochoid";
}

SurfaceProfile surface_profile(double t, int n, const WaveParametersd& params, const InversionSettings& settings) {
  if (n < 2) throw ParameterError("profile needs at least 2 samples");
  SurfaceProfile profile;
  profile.k = params.k();
  profile.kind = params.b0() == 0 ? ProfileKind::cycloid : ProfileKind::trochoid;
  profile.samples.reserve(static_cast<std::size_t>(n));
  const double dx = params.wavelength() / n;
  for (int i = 0; i < n; ++i) {
    const double x = i * dx;
    profile.samples.emplace_back(x, surface_elevation(t, x, params, settings));
  }
  return profile;
}

}  // namespace gerstner
