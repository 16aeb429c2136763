#include "gerstner/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace gerstner {

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "svg") return OutputFormat::svg;
  throw ConfigError("unknown output format '" + name + "' (expected csv, json or svg)");
}

const char* to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::text: return "text";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::svg: return "svg";
  }
  return "?";
}

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("float formatting failed");
  return {buffer.data(), end};
}

WaveParametersd RunConfig::wave() const {
  if (!(k > 0)) throw ParameterError("wavenumber k must be finite and > 0");
  return WaveParametersd({.k = k, .omega = omega, .g = g, .rho = rho, .p0 = p0, .b0 = b0.value_or(-0.1 / k)});
}

namespace {

double number_of(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return value.get<double>();
}

int integer_of(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return value.get<int>();
}

}  // namespace

void apply_config(RunConfig& config, const nlohmann::json& document) {
  if (!document.is_object()) throw ConfigError("config document must be a flat JSON object");
  for (const auto& [key, value] : document.items()) {
    if (key == "k") config.k = number_of(value, key);
    else if (key == "omega") config.omega = number_of(value, key);
    else if (key == "g") config.g = number_of(value, key);
    else if (key == "rho") config.rho = number_of(value, key);
    else if (key == "p0") config.p0 = number_of(value, key);
    else if (key == "b0") config.b0 = number_of(value, key);
    else if (key == "t") config.t = number_of(value, key);
    else if (key == "nx") config.nx = integer_of(value, key);
    else if (key == "nz") config.nz = integer_of(value, key);
    else if (key == "depth") config.depth = number_of(value, key);
    else if (key == "dt") config.dt = number_of(value, key);
    else if (key == "steps") config.steps = integer_of(value, key);
    else if (key == "tol") config.tol = number_of(value, key);
    else if (key == "h") config.h = number_of(value, key);
    else if (key == "a") config.a = number_of(value, key);
    else if (key == "b") config.b = number_of(value, key);
    else if (key == "inversion_tolerance") config.inversion.tolerance = number_of(value, key);
    else if (key == "max_iterations") config.inversion.max_iterations = integer_of(value, key);
    else if (key == "bisection_fallback") {
      if (!value.is_boolean()) throw ConfigError("config key 'bisection_fallback' must be a boolean");
      config.inversion.bisection_fallback = value.get<bool>();
    } else if (key == "out") {
      if (!value.is_string()) throw ConfigError("config key 'out' must be a string");
      config.out = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) throw ConfigError("config key 'format' must be a string");
      config.format = parse_format(value.get<std::string>());
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed config file " + path.string() + ": " + e.what());
  }
  apply_config(config, document);
}

std::vector<FieldSample> field_slice(double t, int nx, int nz, double depth, const WaveParametersd& params,
                                     const FiniteDifferenceSteps& steps, const InversionSettings& settings) {
  if (nx < 1 || nz < 2) throw ParameterError("field slice needs nx >= 1 and nz >= 2");
  if (!(depth > 0)) throw ParameterError("field depth must be > 0");
  const SamplingGrid reference = SamplingGrid::defaults(params, steps);
  const double gap = reference.surface_offsets.front();
  const double bottom = params.b0() - depth;

  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz));
  for (int i = 0; i < nx; ++i) {
    const double x = i * params.wavelength() / nx;
    const double top = surface_elevation(t, x, params, settings) - gap;
    for (int j = 0; j < nz; ++j) {
      const double z = top - j * (top - bottom) / (nz - 1);
      const EulerianPointd point{t, x, z};
      const EulerianState state = eulerian_state(point, params, settings);
      out.push_back({x, z, state.velocity.x(), state.velocity.y(), state.pressure,
                     vorticity_fd(point, params, steps, settings)});
    }
  }
  return out;
}

nlohmann::ordered_json params_json(const WaveParametersd& params) {
  nlohmann::ordered_json j;
  j["k"] = params.k();
  j["omega"] = params.omega();
  j["g"] = params.g();
  j["rho"] = params.rho();
  j["p0"] = params.p0();
  j["b0"] = params.b0();
  j["c"] = params.speed();
  return j;
}

nlohmann::ordered_json report_json(const VerificationReport& report, const WaveParametersd& params) {
  nlohmann::ordered_json j;
  j["params"] = params_json(params);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json r;
    r["name"] = c.name;
    r["max_abs_residual"] = c.max_abs_residual;
    r["residual_scale"] = c.residual_scale;
    r["tolerance"] = c.tolerance;
    r["pass"] = c.pass;
    j["checks"].push_back(r);
  }
  j["fd_step"] = {{"space", report.fd_step.space}, {"time", report.fd_step.time}};
  nlohmann::ordered_json grid;
  grid["n_x"] = report.grid.n_x;
  grid["n_z"] = report.grid.n_z;
  grid["depth_extent"] = report.grid.depth_extent;
  grid["times"] = report.grid.times;
  grid["surface_offsets"] = report.grid.surface_offsets;
  grid["interior_points"] = report.interior_points;
  grid["surface_points"] = report.surface_points;
  j["grid"] = grid;
  j["overall_pass"] = report.overall_pass;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) {
    nlohmann::ordered_json r;
    r["check"] = f.check;
    r["t"] = f.point.t;
    r["x"] = f.point.x;
    r["z"] = f.point.z;
    r["message"] = f.message;
    j["failures"].push_back(r);
  }
  return j;
}

std::string profile_csv(const SurfaceProfile& profile) {
  std::string out = "x,eta\n";
  for (const auto& s : profile.samples) out += format_double(s.x()) + "," + format_double(s.y()) + "\n";
  return out;
}

nlohmann::ordered_json profile_json(const SurfaceProfile& profile, const WaveParametersd& params) {
  nlohmann::ordered_json j;
  j["params"] = params_json(params);
  j["kind"] = to_string(profile.kind);
  j["crest"] = params.b0() + params.surface_amplitude();
  j["trough"] = params.b0() - params.surface_amplitude();
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : profile.samples) j["samples"].push_back({s.x(), s.y()});
  return j;
}

namespace {

// Maps physical (x, z) onto an SVG canvas with z up.
struct Canvas {
  double x_min, x_max, z_min, z_max;
  double width = 800;
  double height = 400;
  double margin = 20;

  double px(double x) const { return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin); }
  double pz(double z) const { return height - margin - (z - z_min) / (z_max - z_min) * (height - 2 * margin); }

  std::string open() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(width) + "\" height=\"" +
           format_double(height) + "\" viewBox=\"0 0 " + format_double(width) + " " + format_double(height) +
           "\">\n";
  }

  std::string line(double x0, double z0, double x1, double z1, const std::string& style) const {
    return "<line x1=\"" + format_double(px(x0)) + "\" y1=\"" + format_double(pz(z0)) + "\" x2=\"" +
           format_double(px(x1)) + "\" y2=\"" + format_double(pz(z1)) + "\" style=\"" + style + "\"/>\n";
  }

  std::string polyline(const std::vector<Vector2d>& points, const std::string& style) const {
    std::string out = "<polyline fill=\"none\" style=\"" + style + "\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i > 0) out += ' ';
      out += format_double(px(points[i].x())) + "," + format_double(pz(points[i].y()));
    }
    return out + "\"/>\n";
  }
};

}  // namespace

std::string profile_svg(const SurfaceProfile& profile, const WaveParametersd& params) {
  const double crest = params.b0() + params.surface_amplitude();
  const double trough = params.b0() - params.surface_amplitude();
  const double pad = 0.1 * (crest - trough) + 1e-12;
  const Canvas canvas{0, params.wavelength(), trough - pad, crest + pad};
  std::string out = canvas.open();
  out += canvas.line(0, crest, params.wavelength(), crest, "stroke:#999;stroke-dasharray:4");
  out += canvas.line(0, trough, params.wavelength(), trough, "stroke:#999;stroke-dasharray:4");
  out += canvas.polyline(profile.samples, "stroke:#1f5fa8;stroke-width:2");
  return out + "</svg>\n";
}

std::string field_csv(const std::vector<FieldSample>& samples) {
  std::string out = "x,z,u,w,p,gamma\n";
  for (const auto& s : samples) {
    out += format_double(s.x) + "," + format_double(s.z) + "," + format_double(s.u) + "," + format_double(s.w) +
           "," + format_double(s.p) + "," + format_double(s.gamma) + "\n";
  }
  return out;
}

nlohmann::ordered_json field_json(const std::vector<FieldSample>& samples, const WaveParametersd& params) {
  nlohmann::ordered_json j;
  j["params"] = params_json(params);
  j["columns"] = {"x", "z", "u", "w", "p", "gamma"};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& s : samples) j["rows"].push_back({s.x, s.z, s.u, s.w, s.p, s.gamma});
  return j;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,x,z\n";
  for (const auto& s : trajectory.samples) {
    out += format_double(s.t) + "," + format_double(s.position.x()) + "," + format_double(s.position.y()) + "\n";
  }
  return out;
}

nlohmann::ordered_json trajectory_fit_json(const Trajectory& trajectory, const TraceSummary& summary) {
  nlohmann::ordered_json j;
  j["center"] = {trajectory.fit.center.x(), trajectory.fit.center.y()};
  j["radius"] = trajectory.fit.radius;
  j["period"] = trajectory.inferred_period;
  j["max_deviation"] = summary.max_deviation;
  j["closure_error"] = summary.closure_error;
  j["clockwise"] = trajectory.clockwise;
  j["label"] = {summary.label.a, summary.label.b};
  j["expected_radius"] = summary.expected_radius;
  return j;
}

nlohmann::ordered_json trajectory_json(const Trajectory& trajectory, const TraceSummary& summary) {
  nlohmann::ordered_json j;
  j["dt"] = trajectory.dt;
  j["columns"] = {"t", "x", "z"};
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : trajectory.samples) j["samples"].push_back({s.t, s.position.x(), s.position.y()});
  j["fit"] = trajectory_fit_json(trajectory, summary);
  return j;
}

std::string trajectory_svg(const Trajectory& trajectory, const TraceSummary& summary) {
  const Vector2d c = trajectory.fit.center;
  const double r = std::max({trajectory.fit.radius, summary.expected_radius, 1e-12}) * 1.2;
  Canvas canvas{c.x() - r, c.x() + r, c.y() - r, c.y() + r};
  canvas.width = canvas.height = 400;
  std::string out = canvas.open();
  out += "<circle cx=\"" + format_double(canvas.px(summary.label.a)) + "\" cy=\"" +
         format_double(canvas.pz(summary.label.b)) + "\" r=\"" +
         format_double(summary.expected_radius / (2 * r) * (canvas.width - 2 * canvas.margin)) +
         "\" fill=\"none\" style=\"stroke:#999;stroke-dasharray:4\"/>\n";
  std::vector<Vector2d> points;
  points.reserve(trajectory.samples.size());
  for (const auto& s : trajectory.samples) points.push_back(s.position);
  out += canvas.polyline(points, "stroke:#c0392b;stroke-width:1.5");
  return out + "</svg>\n";
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(s);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw ConfigError("empty CSV document");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    for (const auto& cell : split(line)) {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) throw ConfigError("bad CSV number '" + cell + "'");
      values.push_back(v);
    }
    if (values.size() != table.header.size()) throw ConfigError("CSV row width does not match header");
    table.rows.push_back(std::move(values));
  }
  return table;
}

std::string write_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace gerstner
