#include "gerstner/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

namespace gerstner {

namespace {

void emit(const std::string& path, const std::string& document, std::ostream& out) {
  if (path.empty()) {
    out << document;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + path);
  file << document;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// Maps exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

OutputFormat format_or(const RunConfig& config, OutputFormat fallback, std::initializer_list<OutputFormat> allowed) {
  const OutputFormat f = config.format.value_or(fallback);
  for (OutputFormat a : allowed) {
    if (a == f) return f;
  }
  throw ConfigError(std::string("format '") + to_string(f) + "' is not supported by this command");
}

FiniteDifferenceSteps steps_for(const RunConfig& config, const WaveParametersd& params) {
  if (config.h) {
    if (!(*config.h > 0)) throw ConfigError("--h must be > 0");
    return FiniteDifferenceSteps::from_space(*config.h, params);
  }
  return FiniteDifferenceSteps::defaults(params);
}

}  // namespace

int cmd_speed(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WaveParametersd params = config.wave();
    const OutputFormat format = format_or(config, OutputFormat::text, {OutputFormat::text, OutputFormat::json});
    const double residual = std::abs(dispersion_residual(params));
    if (format == OutputFormat::json) {
      nlohmann::ordered_json j;
      j["params"] = params_json(params);
      j["c"] = params.speed();
      j["residual"] = residual;
      emit(config.out, dump(j), out);
    } else {
      char line[64];
      std::snprintf(line, sizeof line, "%.12f", params.speed());
      emit(config.out, std::string("c = ") + line + "\nresidual = " + format_double(residual) + "\n", out);
    }
    return kExitPass;
  });
}

int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WaveParametersd params = config.wave();
    config.inversion.validate();
    const OutputFormat format =
        format_or(config, OutputFormat::csv, {OutputFormat::csv, OutputFormat::json, OutputFormat::svg});
    const int n = config.nx.value_or(256);
    if (n < 2) throw ConfigError("--nx must be >= 2");
    const SurfaceProfile profile = surface_profile(config.t.value_or(0), n, params, config.inversion);
    switch (format) {
      case OutputFormat::json: emit(config.out, dump(profile_json(profile, params)), out); break;
      case OutputFormat::svg: emit(config.out, profile_svg(profile, params), out); break;
      default: emit(config.out, profile_csv(profile), out); break;
    }
    return kExitPass;
  });
}

int cmd_field(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WaveParametersd params = config.wave();
    config.inversion.validate();
    const OutputFormat format = format_or(config, OutputFormat::csv, {OutputFormat::csv, OutputFormat::json});
    const int nx = config.nx.value_or(24);
    const int nz = config.nz.value_or(16);
    if (nx < 1 || nz < 2) throw ConfigError("--nx must be >= 1 and --nz >= 2");
    const double depth = config.depth.value_or(3 / params.k());
    if (!(depth > 0)) throw ConfigError("--depth must be > 0");
    const auto samples = field_slice(config.t.value_or(0), nx, nz, depth, params, steps_for(config, params), config.inversion);
    if (format == OutputFormat::json) {
      emit(config.out, dump(field_json(samples, params)), out);
    } else {
      emit(config.out, field_csv(samples), out);
    }
    return kExitPass;
  });
}

int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WaveParametersd params = config.wave();
    config.inversion.validate();
    const OutputFormat format =
        format_or(config, OutputFormat::csv, {OutputFormat::csv, OutputFormat::json, OutputFormat::svg});
    const double period = params.period();
    const double dt = config.dt.value_or(period / 2000);
    const int steps = config.steps.value_or(static_cast<int>(std::lround(period / dt)));
    const double tol = config.tol.value_or(1e-6);
    if (!(tol >= 0)) throw ConfigError("--tol must be >= 0");

    const LagrangianLabeld label =
        make_label(config.a.value_or(0.0), config.b.value_or(params.b0() - 1 / params.k()), params);
    const double t0 = config.t.value_or(0);
    const Vector2d start = flow_map(t0, label, params);
    const Trajectory trajectory = trace({t0, start.x(), start.y()}, params, dt, steps, config.inversion);

    TraceSummary summary;
    summary.label = label;
    summary.expected_radius = std::exp(params.k() * label.b) / params.k();
    summary.max_deviation = compare_to_analytic(trajectory, params, config.inversion);
    summary.closure_error = closure_error(trajectory);

    switch (format) {
      case OutputFormat::json: emit(config.out, dump(trajectory_json(trajectory, summary)), out); break;
      case OutputFormat::svg: emit(config.out, trajectory_svg(trajectory, summary), out); break;
      default: {
        emit(config.out, trajectory_csv(trajectory), out);
        const std::string fit = dump(trajectory_fit_json(trajectory, summary));
        if (config.out.empty()) {
          err << fit;
        } else {
          emit(config.out + ".fit.json", fit, out);
        }
      }
    }

    const double radius_error = std::abs(trajectory.fit.radius - summary.expected_radius);
    const double center_error = (trajectory.fit.center - Vector2d(label.a, label.b)).norm();
    const double bound = tol * summary.expected_radius;
    if (!(summary.max_deviation <= bound && radius_error <= bound && center_error <= bound)) {
      err << "trace: fit deviates beyond tolerance " << format_double(tol) << " x radius\n";
      return kExitFailure;
    }
    return kExitPass;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WaveParametersd params = config.wave();
    config.inversion.validate();
    format_or(config, OutputFormat::json, {OutputFormat::json});
    const FiniteDifferenceSteps steps = steps_for(config, params);
    SamplingGrid grid = SamplingGrid::defaults(params, steps);
    if (config.nx) grid.n_x = *config.nx;
    if (config.nz) grid.n_z = *config.nz;
    if (config.depth) grid.depth_extent = *config.depth;
    if (config.t) grid.times = {*config.t};
    grid.validate();
    Tolerances tolerances;
    if (config.tol) {
      if (!(*config.tol >= 0)) throw ConfigError("--tol must be >= 0");
      tolerances = Tolerances::uniform(*config.tol);
    }
    const VerificationReport report = run_full_verification(params, grid, steps, tolerances, config.inversion);
    emit(config.out, dump(report_json(report, params)), out);
    for (const auto& c : report.checks) {
      err << (c.pass ? "PASS " : "FAIL ") << c.name << " scaled=" << format_double(c.scaled())
          << " tol=" << format_double(c.tolerance) << "\n";
    }
    if (!report.failures.empty()) err << report.failures.size() << " point failures\n";
    return report.overall_pass ? kExitPass : kExitFailure;
  });
}

}  // namespace gerstner
