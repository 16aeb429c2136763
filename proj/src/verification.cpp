#include "gerstner/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gerstner {

namespace {

// Central differences of the Eulerian fields around one point. Every entry
// comes from eulerian_state() evaluations; no closed-form derivative enters.
struct FieldStencil {
  EulerianState center;
  Matrix2d gradient;  // [[u_x, u_z], [w_x, w_z]]
  Vector2d velocity_t = Vector2d::Zero();
  Vector2d pressure_gradient = Vector2d::Zero();
};

EulerianState stencil_state(const EulerianPointd& p, const WaveParametersd& params,
                            const InversionSettings& settings) {
  if (!in_domain(p, params, settings)) {
    throw StencilError("stencil point (t=" + std::to_string(p.t) + ", x=" + std::to_string(p.x) +
                       ", z=" + std::to_string(p.z) + ") is above the free surface");
  }
  return eulerian_state(p, params, settings);
}

void validate(const FiniteDifferenceSteps& steps) {
  if (!(steps.space > 0) || !(steps.time > 0)) throw ParameterError("finite-difference steps must be > 0");
}

FieldStencil sample_stencil(const EulerianPointd& p, const WaveParametersd& params,
                            const FiniteDifferenceSteps& steps, const InversionSettings& settings,
                            bool with_time_and_pressure) {
  validate(steps);
  const double h = steps.space;
  FieldStencil s;
  s.center = stencil_state(p, params, settings);
  const EulerianState east = stencil_state({p.t, p.x + h, p.z}, params, settings);
  const EulerianState west = stencil_state({p.t, p.x - h, p.z}, params, settings);
  const EulerianState up = stencil_state({p.t, p.x, p.z + h}, params, settings);
  const EulerianState down = stencil_state({p.t, p.x, p.z - h}, params, settings);
  s.gradient.col(0) = (east.velocity - west.velocity) / (2 * h);
  s.gradient.col(1) = (up.velocity - down.velocity) / (2 * h);
  if (with_time_and_pressure) {
    const double tau = steps.time;
    const EulerianState later = stencil_state({p.t + tau, p.x, p.z}, params, settings);
    const EulerianState earlier = stencil_state({p.t - tau, p.x, p.z}, params, settings);
    s.velocity_t = (later.velocity - earlier.velocity) / (2 * tau);
    s.pressure_gradient = {(east.pressure - west.pressure) / (2 * h), (up.pressure - down.pressure) / (2 * h)};
  }
  return s;
}

MomentumResidual momentum_from(const FieldStencil& s, double t, const WaveParametersd& params) {
  const double u = s.center.velocity.x();
  const double w = s.center.velocity.y();
  const double omega = params.omega();
  const double rho = params.rho();
  // (u_t + u u_x + w u_z, w_t + u w_x + w w_z)
  const Vector2d material = s.velocity_t + s.gradient * s.center.velocity;
  const Vector2d coriolis(2 * omega * w, -2 * omega * u);
  const Vector2d gravity(0, params.g());

  MomentumResidual out;
  out.residual = material + coriolis + s.pressure_gradient / rho + gravity;
  out.acceleration_mismatch = material - flow_acceleration(t, s.center.label, params);
  const double c = params.speed();
  out.scale = params.k() * c * c * std::exp(params.k() * s.center.label.b);
  out.label = s.center.label;
  return out;
}

double ck_scale(const LagrangianLabeld& label, const WaveParametersd& params) {
  return params.k() * params.speed() * std::exp(params.k() * label.b);
}

ScalarResidual divergence_from(const FieldStencil& s, const WaveParametersd& params) {
  return {s.gradient(0, 0) + s.gradient(1, 1), ck_scale(s.center.label, params), s.center.label};
}

ScalarResidual vorticity_from(const FieldStencil& s, const WaveParametersd& params) {
  const double fd = s.gradient(0, 1) - s.gradient(1, 0);
  return {fd - vorticity(s.center.label.b, params), ck_scale(s.center.label, params), s.center.label};
}

struct Accumulator {
  CheckRecord record;
  double worst = -1;

  void add(double raw, double scale) {
    ++record.samples;
    const double scaled = std::abs(raw) / scale;
    if (!(scaled <= worst)) {  // NaN propagates as worst
      worst = scaled;
      record.max_abs_residual = std::abs(raw);
      record.residual_scale = scale;
    }
  }

  CheckRecord finish() {
    record.pass = record.samples > 0 && std::isfinite(worst) && worst <= record.tolerance;
    return record;
  }
};

double max_abs(const Vector2d& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

FiniteDifferenceSteps FiniteDifferenceSteps::from_space(double h, const WaveParametersd& params) {
  return {h, h / params.speed()};
}

namespace {

// The Eulerian fields vary on the scale x_a / k near the crest, and
// min x_a = 1 - e^{k b0} shrinks as the surface label approaches 0.
double surface_stretch(const WaveParametersd& params) {
  return std::max(-std::expm1(params.k() * params.b0()), 1e-2);
}

}  // namespace

FiniteDifferenceSteps FiniteDifferenceSteps::defaults(const WaveParametersd& params) {
  return from_space(1e-4 * surface_stretch(params) / params.k(), params);
}

SamplingGrid SamplingGrid::defaults(const WaveParametersd& params, const FiniteDifferenceSteps& steps) {
  SamplingGrid grid;
  grid.depth_extent = 3 / params.k();
  const double period = params.period();
  grid.times = {0.0, 0.3 * period, 0.7 * period};

  // Keep the spatial and temporal stencils at least 3 steps below eta, allowing
  // for the steepest trochoid slope e / sqrt(1 - e^2).
  const double e = std::exp(params.k() * params.b0());
  const double max_slope = e < 1 ? e / std::sqrt(1 - e * e) : 0;
  const double reach = std::max(steps.space, steps.time * params.speed());
  const double near = 3 * reach * (1 + max_slope);
  if (e < 1 && near < 0.01 / params.k()) {
    grid.surface_offsets = {near, 0.01 / params.k()};
  } else {
    grid.surface_offsets = {0.01 / params.k()};
  }
  return grid;
}

void SamplingGrid::validate() const {
  if (n_x < 2 || n_z < 2) throw ParameterError("sampling grid needs n_x >= 2 and n_z >= 2");
  if (!(depth_extent > 0)) throw ParameterError("sampling grid depth_extent must be > 0");
  if (times.empty()) throw ParameterError("sampling grid needs at least one time");
}

MomentumResidual momentum_residual(const EulerianPointd& point, const WaveParametersd& params,
                                   const FiniteDifferenceSteps& steps, const InversionSettings& settings) {
  return momentum_from(sample_stencil(point, params, steps, settings, true), point.t, params);
}

ScalarResidual divergence_residual(const EulerianPointd& point, const WaveParametersd& params,
                                   const FiniteDifferenceSteps& steps, const InversionSettings& settings) {
  return divergence_from(sample_stencil(point, params, steps, settings, false), params);
}

ScalarResidual vorticity_residual(const EulerianPointd& point, const WaveParametersd& params,
                                  const FiniteDifferenceSteps& steps, const InversionSettings& settings) {
  return vorticity_from(sample_stencil(point, params, steps, settings, false), params);
}

double vorticity_fd(const EulerianPointd& point, const WaveParametersd& params, const FiniteDifferenceSteps& steps,
                    const InversionSettings& settings) {
  const FieldStencil s = sample_stencil(point, params, steps, settings, false);
  return s.gradient(0, 1) - s.gradient(1, 0);
}

KinematicResidual kinematic_bc_residual(double t, double a_surface, const WaveParametersd& params,
                                        const FiniteDifferenceSteps& steps, const InversionSettings& settings) {
  validate(steps);
  const LagrangianLabeld label{a_surface, params.b0()};
  const Matrix2d j = jacobian(t, label, params);
  if (std::abs(j(0, 0)) < 1e-8) throw SingularityError("surface label sits on a cycloid cusp");

  const Vector2d position = flow_map(t, label, params);
  const Vector2d velocity = flow_velocity(t, label, params);
  const double h = steps.space;
  const double tau = steps.time;
  const double x = position.x();
  const double eta_t =
      (surface_elevation(t + tau, x, params, settings) - surface_elevation(t - tau, x, params, settings)) / (2 * tau);
  const double eta_x =
      (surface_elevation(t, x + h, params, settings) - surface_elevation(t, x - h, params, settings)) / (2 * h);

  KinematicResidual out;
  out.residual = velocity.y() - eta_t - velocity.x() * eta_x;
  out.analytic_residual = velocity.y() - (velocity.x() - params.speed()) * (j(1, 0) / j(0, 0));
  out.scale = params.speed();
  return out;
}

double dynamic_bc_residual(double t, double a_surface, const WaveParametersd& params,
                           const InversionSettings& settings) {
  const Vector2d position = flow_map(t, LagrangianLabeld{a_surface, params.b0()}, params);
  return eulerian_pressure({t, position.x(), position.y()}, params, settings) - params.p0();
}

DecayProfile decay_check(double t, double x, const WaveParametersd& params, const std::vector<double>& depths,
                         const InversionSettings& settings) {
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (!(depths[i] < params.b0())) throw ParameterError("decay depths must lie below b0");
    if (i > 0 && !(depths[i] < depths[i - 1])) throw ParameterError("decay depths must be strictly decreasing");
  }
  DecayProfile out;
  out.depths = depths;
  const double c = params.speed();
  const double lift = params.surface_amplitude();
  for (double z : depths) {
    const double magnitude = eulerian_velocity({t, x, z}, params, settings).norm();
    const double bound = c * std::exp(params.k() * (z + lift));
    if (!out.magnitudes.empty() && !(magnitude < out.magnitudes.back())) out.strictly_decreasing = false;
    if (!(magnitude <= bound * (1 + 1e-12))) out.within_bound = false;
    out.magnitudes.push_back(magnitude);
    out.bounds.push_back(bound);
  }
  return out;
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckRecord& r) { return r.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

VerificationReport run_full_verification(const WaveParametersd& params, const SamplingGrid& grid,
                                         const FiniteDifferenceSteps& steps, const Tolerances& tolerances,
                                         const InversionSettings& settings) {
  grid.validate();
  validate(steps);
  settings.validate();

  Accumulator momentum{{"momentum", 0, 1, tolerances.momentum}};
  Accumulator divergence{{"divergence", 0, 1, tolerances.divergence}};
  Accumulator vort{{"vorticity", 0, 1, tolerances.vorticity}};
  Accumulator kinematic{{"kinematic_bc", 0, 1, tolerances.kinematic}};
  Accumulator dynamic{{"dynamic_bc", 0, 1, tolerances.dynamic}};
  Accumulator decay{{"decay", 0, 1, 0}};

  VerificationReport report;
  report.fd_step = steps;
  report.grid = grid;

  const double wavelength = params.wavelength();
  const double k = params.k();
  const double bottom = params.b0() - grid.depth_extent;
  const double top_gap = 0.05 / k;
  const double pressure_scale = std::max(std::abs(params.p0()), params.rho() * params.g() / k);
  const double trough = params.b0() - params.surface_amplitude();

  for (double t : grid.times) {
    for (int i = 0; i < grid.n_x; ++i) {
      const double x = i * wavelength / grid.n_x;

      double eta = 0;
      try {
        eta = surface_elevation(t, x, params, settings);
      } catch (const std::exception& e) {
        report.failures.push_back({"surface", {t, x, std::numeric_limits<double>::quiet_NaN()}, e.what()});
        continue;
      }

      std::vector<double> rows;
      for (double offset : grid.surface_offsets) rows.push_back(eta - offset);
      const double top = eta - top_gap;
      for (int j = 0; j < grid.n_z; ++j) rows.push_back(top - j * (top - bottom) / (grid.n_z - 1));

      for (double z : rows) {
        const EulerianPointd point{t, x, z};
        ++report.interior_points;
        try {
          const FieldStencil s = sample_stencil(point, params, steps, settings, true);
          const MomentumResidual m = momentum_from(s, t, params);
          momentum.add(std::max(max_abs(m.residual), max_abs(m.acceleration_mismatch)), m.scale);
          const ScalarResidual d = divergence_from(s, params);
          divergence.add(d.residual, d.scale);
          const ScalarResidual v = vorticity_from(s, params);
          vort.add(v.residual, v.scale);
        } catch (const std::exception& e) {
          report.failures.push_back({"interior", point, e.what()});
        }
      }

      // Surface particle with label a = x.
      const double a = x;
      ++report.surface_points;
      try {
        const KinematicResidual kr = kinematic_bc_residual(t, a, params, steps, settings);
        kinematic.add(std::max(std::abs(kr.residual), std::abs(kr.analytic_residual)), kr.scale);
      } catch (const std::exception& e) {
        report.failures.push_back({"kinematic_bc", {t, a, params.b0()}, e.what()});
      }
      try {
        dynamic.add(dynamic_bc_residual(t, a, params, settings), pressure_scale);
      } catch (const std::exception& e) {
        report.failures.push_back({"dynamic_bc", {t, a, params.b0()}, e.what()});
      }

      std::vector<double> depths;
      for (int j = 0; j < grid.n_z; ++j) depths.push_back(trough - (j + 1) * grid.depth_extent / grid.n_z);
      try {
        const DecayProfile profile = decay_check(t, x, params, depths, settings);
        double violation = 0;
        for (std::size_t j = 0; j < depths.size(); ++j) {
          violation = std::max(violation, profile.magnitudes[j] - profile.bounds[j] * (1 + 1e-12));
          if (j > 0) violation = std::max(violation, profile.magnitudes[j] - profile.magnitudes[j - 1]);
        }
        if (!profile.strictly_decreasing && violation == 0) violation = std::numeric_limits<double>::min();
        decay.add(violation, params.speed());
      } catch (const std::exception& e) {
        report.failures.push_back({"decay", {t, x, trough}, e.what()});
      }
    }
  }

  report.checks = {momentum.finish(), divergence.finish(), vort.finish(),
                   kinematic.finish(), dynamic.finish(),    decay.finish()};
  report.overall_pass = report.failures.empty() &&
                        std::all_of(report.checks.begin(), report.checks.end(), [](const CheckRecord& r) { return r.pass; });
  return report;
}

ConvergenceSample convergence_ratios(const EulerianPointd& point, const WaveParametersd& params,
                                     const FiniteDifferenceSteps& steps, const InversionSettings& settings) {
  const FiniteDifferenceSteps fine = steps.halved();
  const FieldStencil coarse_s = sample_stencil(point, params, steps, settings, true);
  const FieldStencil fine_s = sample_stencil(point, params, fine, settings, true);

  ConvergenceSample out;
  out.momentum = momentum_from(coarse_s, point.t, params).residual.norm() /
                 momentum_from(fine_s, point.t, params).residual.norm();
  out.divergence = std::abs(divergence_from(coarse_s, params).residual) / std::abs(divergence_from(fine_s, params).residual);
  out.vorticity = std::abs(vorticity_from(coarse_s, params).residual) / std::abs(vorticity_from(fine_s, params).residual);
  const FiniteDifferenceSteps surface = FiniteDifferenceSteps::from_space(steps.space * surface_stretch(params), params);
  out.kinematic = std::abs(kinematic_bc_residual(point.t, point.x, params, surface, settings).residual) /
                  std::abs(kinematic_bc_residual(point.t, point.x, params, surface.halved(), settings).residual);
  return out;
}

}  // namespace gerstner
