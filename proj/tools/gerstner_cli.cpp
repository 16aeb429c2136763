// Command-line front end: speed | profile | field | trace | verify.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gerstner/commands.hpp"

namespace {

struct Flags {
  std::optional<double> k, omega, g, rho, p0, b0, t, depth, dt, tol, h, a, b;
  std::optional<int> nx, nz, steps;
  std::optional<std::string> out, format, config;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--k", f.k, "wavenumber (1/m)");
  cmd.add_option("--omega", f.omega, "rotation rate (rad/s)");
  cmd.add_option("--g", f.g, "gravitational acceleration (m/s^2)");
  cmd.add_option("--rho", f.rho, "density (kg/m^3)");
  cmd.add_option("--p0", f.p0, "atmospheric pressure (Pa)");
  cmd.add_option("--b0", f.b0, "surface label depth (m), default -0.1/k");
  cmd.add_option("--t", f.t, "time (s)");
  cmd.add_option("--nx", f.nx, "horizontal sample count");
  cmd.add_option("--nz", f.nz, "vertical sample count");
  cmd.add_option("--depth", f.depth, "sampling depth below b0 (m)");
  cmd.add_option("--dt", f.dt, "trace step (s)");
  cmd.add_option("--steps", f.steps, "trace step count");
  cmd.add_option("--tol", f.tol, "verify: tolerance for every check; trace: fit tolerance relative to radius");
  cmd.add_option("--h", f.h, "finite-difference step in space (m)");
  cmd.add_option("--a", f.a, "trace start label a (m)");
  cmd.add_option("--b", f.b, "trace start label b (m), default b0 - 1/k");
  cmd.add_option("--out", f.out, "output path (stdout when omitted)");
  cmd.add_option("--format", f.format, "csv | json | svg");
  cmd.add_option("--config", f.config, "flat JSON config file");
}

template <typename T, typename U>
void overlay(T& target, const std::optional<U>& value) {
  if (value) target = *value;
}

gerstner::RunConfig resolve(const Flags& f) {
  gerstner::RunConfig config;
  if (f.config) gerstner::apply_config_file(config, *f.config);
  overlay(config.k, f.k);
  overlay(config.omega, f.omega);
  overlay(config.g, f.g);
  overlay(config.rho, f.rho);
  overlay(config.p0, f.p0);
  overlay(config.b0, f.b0);
  overlay(config.t, f.t);
  overlay(config.nx, f.nx);
  overlay(config.nz, f.nz);
  overlay(config.depth, f.depth);
  overlay(config.dt, f.dt);
  overlay(config.steps, f.steps);
  overlay(config.tol, f.tol);
  overlay(config.h, f.h);
  overlay(config.a, f.a);
  overlay(config.b, f.b);
  overlay(config.out, f.out);
  if (f.format) config.format = gerstner::parse_format(*f.format);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating Gerstner waves: evaluation, particle tracing and verification"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  Flags flags;
  using Command = int (*)(const gerstner::RunConfig&, std::ostream&, std::ostream&);
  Command command = nullptr;
  const std::pair<const char*, Command> table[] = {
      {"speed", gerstner::cmd_speed},   {"profile", gerstner::cmd_profile}, {"field", gerstner::cmd_field},
      {"trace", gerstner::cmd_trace},   {"verify", gerstner::cmd_verify},
  };
  const char* help[] = {"print the wave speed and its dispersion residual", "emit the free-surface profile",
                        "emit an Eulerian field slice", "integrate a particle path and fit its orbit",
                        "verify the governing equations by finite differences"};
  for (std::size_t i = 0; i < std::size(table); ++i) {
    CLI::App* sub = app.add_subcommand(table[i].first, help[i]);
    add_flags(*sub, flags);
    sub->callback([&command, fn = table[i].second] { command = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gerstner::kExitUsage;
  }

  gerstner::RunConfig config;
  try {
    config = resolve(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gerstner::kExitUsage;
  }
  return command(config, std::cout, std::cerr);
}
