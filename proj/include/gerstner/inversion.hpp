#pragma once

#include <vector>

#include "gerstner/fields.hpp"

namespace gerstner {

struct InversionSettings {
  /// Bound on |Phi(t)(a, b) - (x, z)| in metres.
  double tolerance = 1e-12;
  int max_iterations = 50;
  /// Bisect when Newton stalls: a column bracket for invert_map, and the
  /// collapsing derivative x_a at cycloid cusps for the surface solve.
  bool bisection_fallback = true;
  /// Points up to this far above eta still count as fluid.
  double domain_slack = 1e-9;

  void validate() const;
};

struct InversionResult {
  LagrangianLabeld label;
  int iterations = 0;
  double residual = 0;
};

/// Solves Phi(t)(a, b) = (x, z) by damped Newton from (a, b) = (x, z).
/// Throws DomainError when the point is above the free surface and
/// ConvergenceError when max_iterations is exhausted.
InversionResult invert_map_detailed(const EulerianPointd& point, const WaveParametersd& params,
                                    const InversionSettings& settings = {});

LagrangianLabeld invert_map(const EulerianPointd& point, const WaveParametersd& params,
                            const InversionSettings& settings = {});

struct SurfaceSolve {
  double eta = 0;
  /// Label a of the surface particle sitting above x.
  double a = 0;
  int iterations = 0;
};

/// Free-surface height eta(t, x): the image of the label line b = b0.
SurfaceSolve surface_solve(double t, double x, const WaveParametersd& params, const InversionSettings& settings = {});

double surface_elevation(double t, double x, const WaveParametersd& params, const InversionSettings& settings = {});

/// True iff z lies below eta(t, x), up to settings.domain_slack.
bool in_domain(const EulerianPointd& point, const WaveParametersd& params, const InversionSettings& settings = {});

/// Fields at a fixed physical point, all read off one inversion.
struct EulerianState {
  LagrangianLabeld label;
  Vector2d velocity;
  double pressure = 0;
};

EulerianState eulerian_state(const EulerianPointd& point, const WaveParametersd& params,
                             const InversionSettings& settings = {});

/// (u, w) at a fixed physical point.
Vector2d eulerian_velocity(const EulerianPointd& point, const WaveParametersd& params,
                           const InversionSettings& settings = {});

double eulerian_pressure(const EulerianPointd& point, const WaveParametersd& params,
                         const InversionSettings& settings = {});

enum class ProfileKind { cycloid, trochoid };

const char* to_string(ProfileKind kind);

struct SurfaceProfile {
  double k = 0;
  ProfileKind kind = ProfileKind::trochoid;
  /// (x, eta) over [0, 2 pi / k), increasing in x.
  std::vector<Vector2d> samples;
};

/// eta(t, .) sampled at n equally spaced x over one wavelength.
SurfaceProfile surface_profile(double t, int n, const WaveParametersd& params, const InversionSettings& settings = {});

}  // namespace gerstner
