#pragma once

#include <string>
#include <vector>

#include "gerstner/inversion.hpp"

namespace gerstner {

/// Central-difference steps in space (m) and time (s).
struct FiniteDifferenceSteps {
  double space = 0;
  double time = 0;

  /// space = h, time = h / c, so both stencils move a particle by comparable amounts.
  static FiniteDifferenceSteps from_space(double h, const WaveParametersd& params);
  /// h = 1e-4 (1 - e^{k b0}) / k, floored at 1e-6 / k.
  static FiniteDifferenceSteps defaults(const WaveParametersd& params);
  FiniteDifferenceSteps halved() const { return {space / 2, time / 2}; }
};

struct SamplingGrid {
  int n_x = 24;
  int n_z = 16;
  /// How far below b0 the deepest row sits (m).
  double depth_extent = 3;
  std::vector<double> times;
  /// Extra rows at these distances below eta (m).
  std::vector<double> surface_offsets;

  /// 24 x 16 columns/rows over one wavelength down to b0 - 3/k, at t = 0, 0.3T, 0.7T,
  /// with near-surface rows clear of the stencil reach.
  static SamplingGrid defaults(const WaveParametersd& params, const FiniteDifferenceSteps& steps);
  void validate() const;
};

/// Dimensionless acceptance thresholds per check.
struct Tolerances {
  double momentum = 1e-5;
  double divergence = 1e-5;
  double vorticity = 1e-4;
  double kinematic = 1e-5;
  double dynamic = 1e-9;

  static Tolerances uniform(double tol) { return {tol, tol, tol, tol, tol}; }
};

struct MomentumResidual {
  /// Momentum equations with every derivative taken by central differences.
  Vector2d residual;
  /// FD material derivative of (u, w) minus the closed-form particle acceleration.
  Vector2d acceleration_mismatch;
  /// k c^2 e^{kb}.
  double scale = 0;
  LagrangianLabeld label;
};

struct ScalarResidual {
  double residual = 0;
  double scale = 0;
  LagrangianLabeld label;
};

struct KinematicResidual {
  /// w - eta_t - u eta_x with eta_t, eta_x by central differences of eta.
  double residual = 0;
  /// w - (u - c) z_a / x_a, exact up to round-off.
  double analytic_residual = 0;
  /// c.
  double scale = 0;
};

MomentumResidual momentum_residual(const EulerianPointd& point, const WaveParametersd& params,
                                   const FiniteDifferenceSteps& steps, const InversionSettings& settings = {});

/// u_x + w_z, scaled by c k e^{kb}.
ScalarResidual divergence_residual(const EulerianPointd& point, const WaveParametersd& params,
                                   const FiniteDifferenceSteps& steps, const InversionSettings& settings = {});

/// (u_z - w_x) minus the closed-form vorticity of the inverted label, scaled by c k e^{kb}.
ScalarResidual vorticity_residual(const EulerianPointd& point, const WaveParametersd& params,
                                  const FiniteDifferenceSteps& steps, const InversionSettings& settings = {});

/// FD estimate of u_z - w_x alone.
double vorticity_fd(const EulerianPointd& point, const WaveParametersd& params, const FiniteDifferenceSteps& steps,
                    const InversionSettings& settings = {});

/// Kinematic condition at the surface particle labelled (a_surface, b0).
/// Throws SingularityError at a cycloid cusp.
KinematicResidual kinematic_bc_residual(double t, double a_surface, const WaveParametersd& params,
                                        const FiniteDifferenceSteps& steps, const InversionSettings& settings = {});

/// Pressure at the surface particle labelled (a_surface, b0) minus p0.
double dynamic_bc_residual(double t, double a_surface, const WaveParametersd& params,
                           const InversionSettings& settings = {});

struct DecayProfile {
  std::vector<double> depths;
  std::vector<double> magnitudes;
  /// c e^{k (z + e^{k b0}/k)}.
  std::vector<double> bounds;
  bool within_bound = true;
  bool strictly_decreasing = true;
};

/// |(u, w)| down the column x at the given depths (strictly decreasing, below b0).
DecayProfile decay_check(double t, double x, const WaveParametersd& params, const std::vector<double>& depths,
                         const InversionSettings& settings = {});

struct CheckRecord {
  std::string name;
  /// Raw residual at the sample with the largest scaled residual.
  double max_abs_residual = 0;
  double residual_scale = 1;
  double tolerance = 0;
  std::size_t samples = 0;
  bool pass = false;

  double scaled() const { return max_abs_residual / residual_scale; }
};

struct PointFailure {
  std::string check;
  EulerianPointd point;
  std::string message;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  FiniteDifferenceSteps fd_step;
  SamplingGrid grid;
  std::size_t interior_points = 0;
  std::size_t surface_points = 0;
  std::vector<PointFailure> failures;
  bool overall_pass = false;

  const CheckRecord* find(const std::string& name) const;
};

/// Sweeps every residual over the grid. Point-level errors are collected in
/// `failures` and fail the report without stopping the sweep.
VerificationReport run_full_verification(const WaveParametersd& params, const SamplingGrid& grid,
                                         const FiniteDifferenceSteps& steps, const Tolerances& tolerances = {},
                                         const InversionSettings& settings = {});

/// Ratio |r(h)| / |r(h/2)| for each FD residual at one point. The kinematic
/// ratio is taken at the surface label a = point.x, with h shrunk by the
/// surface length scale 1 - e^{k b0}.
struct ConvergenceSample {
  double momentum = 0;
  double divergence = 0;
  double vorticity = 0;
  double kinematic = 0;
};

ConvergenceSample convergence_ratios(const EulerianPointd& point, const WaveParametersd& params,
                                     const FiniteDifferenceSteps& steps, const InversionSettings& settings = {});

}  // namespace gerstner
