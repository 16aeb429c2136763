#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gerstner/tracer.hpp"
#include "gerstner/verification.hpp"

namespace gerstner {

class ConfigError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

enum class OutputFormat { text, csv, json, svg };

OutputFormat parse_format(const std::string& name);
const char* to_string(OutputFormat format);

/// Shortest decimal that reads back to the same double (at most 17 significant digits).
std::string format_double(double value);

/// Everything one CLI invocation needs. Unset optionals take per-command defaults.
struct RunConfig {
  double k = 1;
  double omega = 7.3e-5;
  double g = 9.8;
  double rho = 1000;
  double p0 = 101325;
  /// Defaults to -0.1 / k.
  std::optional<double> b0;
  /// Defaults to 0; verify samples 0, 0.3T and 0.7T when unset.
  std::optional<double> t;
  std::optional<int> nx;
  std::optional<int> nz;
  std::optional<double> depth;
  std::optional<double> dt;
  std::optional<int> steps;
  std::optional<double> tol;
  std::optional<double> h;
  /// Trace start label; defaults a = 0, b = b0 - 1/k.
  std::optional<double> a;
  std::optional<double> b;
  std::string out;
  std::optional<OutputFormat> format;
  InversionSettings inversion;

  WaveParametersd wave() const;
};

/// Overlays a flat JSON object onto `config`. Unknown keys and mistyped values
/// throw ConfigError.
void apply_config(RunConfig& config, const nlohmann::json& document);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

struct FieldSample {
  double x = 0;
  double z = 0;
  double u = 0;
  double w = 0;
  double p = 0;
  double gamma = 0;
};

/// nx columns over one wavelength, nz rows from just under eta down to b0 - depth,
/// with gamma from central differences.
std::vector<FieldSample> field_slice(double t, int nx, int nz, double depth, const WaveParametersd& params,
                                     const FiniteDifferenceSteps& steps, const InversionSettings& settings = {});

nlohmann::ordered_json params_json(const WaveParametersd& params);
nlohmann::ordered_json report_json(const VerificationReport& report, const WaveParametersd& params);

std::string profile_csv(const SurfaceProfile& profile);
nlohmann::ordered_json profile_json(const SurfaceProfile& profile, const WaveParametersd& params);
std::string profile_svg(const SurfaceProfile& profile, const WaveParametersd& params);

std::string field_csv(const std::vector<FieldSample>& samples);
nlohmann::ordered_json field_json(const std::vector<FieldSample>& samples, const WaveParametersd& params);

struct TraceSummary {
  LagrangianLabeld label;
  double expected_radius = 0;
  double max_deviation = 0;
  double closure_error = 0;
};

std::string trajectory_csv(const Trajectory& trajectory);
nlohmann::ordered_json trajectory_fit_json(const Trajectory& trajectory, const TraceSummary& summary);
nlohmann::ordered_json trajectory_json(const Trajectory& trajectory, const TraceSummary& summary);
std::string trajectory_svg(const Trajectory& trajectory, const TraceSummary& summary);

/// Parses the comma-separated numeric body of a CSV document; the header row is returned separately.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);
std::string write_csv(const CsvTable& table);

}  // namespace gerstner
