#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tempscat/cascade.hpp"
#include "tempscat/error.hpp"
#include "tempscat/media.hpp"
#include "tempscat/scatter.hpp"
#include "tempscat/verify.hpp"

namespace tempscat::app {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutputDirVariable = "TEMPSCAT_OUTPUT_DIR";

enum class Command { solve, sweep, oracle, cascade, verify };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c) noexcept;
std::optional<Command> command_from_string(std::string_view s) noexcept;
std::optional<OutputFormat> format_from_string(std::string_view s) noexcept;

struct IncidentSpec {
  CVec3 amplitude;
  double omega;
  Vec3 k;
};

/// A parameter axis of a sweep. Parameters: before.epsilon, before.mu,
/// after.epsilon, after.mu, incident.omega, t0.
struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

struct OracleSpec {
  double tau_periods = 1e-3;
  double tol = 1e-10;
  std::vector<double> convergence_taus;
};

struct BoundarySampling {
  std::size_t count = 100;
  std::uint64_t seed = 20240601;
  double extent = 10.0;
};

struct CascadeSpec {
  std::vector<TimelineSegment> timeline;
  double t_start = 0.0;
  bool floquet = false;
};

struct VerifySpec {
  std::vector<ExponentialTerm> terms;
  double tol = 1e-9;
  std::vector<double> grid;  // empty: canonical grid
};

struct RunConfig {
  Command command = Command::solve;
  std::optional<MediumState> before;
  std::optional<MediumState> after;
  double t0 = 0.0;
  std::optional<IncidentSpec> incident;
  FrequencyConvention convention;
  OracleSpec oracle;
  std::vector<SweepAxis> sweep;
  std::size_t threads = 0;  // 0: hardware concurrency
  CascadeSpec cascade;
  VerifySpec verify;
  BoundarySampling boundary;
  OutputFormat format = OutputFormat::json;
  std::string output_path;
};

/// Flag-level overrides, applied on top of the document before validation.
struct Overrides {
  std::optional<Command> command;
  std::optional<OutputFormat> format;
  std::optional<std::string> output_path;
  std::optional<double> tau_periods;
  std::optional<double> tol;
};

/// Parse and validate a JSON run configuration. Failures throw
/// Error(config) with a field path, e.g. "incident.omega: must be > 0".
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

struct Artifact {
  std::string text;
  std::string extension;  // "json" or "csv"
};

/// Execute a validated configuration. Solver errors propagate as Error.
Artifact run(const RunConfig& config, bool timestamp = true);

int exit_code_for(ErrorCode code) noexcept;

struct Outcome {
  int exit_code = 0;
  std::string output;       // artifact text on success
  std::string output_path;  // resolved destination; empty means stdout
  std::string error;        // machine-readable JSON error on failure
  std::optional<ErrorCode> code;  // unset on success and for internal failures
};

/// {"error": {"code", "message", "exit_code"}} as a single line.
std::string error_document(std::string_view code, const std::string& message, int exit_code);

/// parse_config + run with every failure mapped to an exit code.
Outcome run_document(std::string_view text, const Overrides& overrides, bool timestamp);

/// Apply the output-directory environment override to a configured path.
std::string resolve_output_path(const RunConfig& config);

// Serialization shared by the CLI and tests.
using ojson = nlohmann::ordered_json;

ojson to_json(const ScatteringResult& r);
ScatteringResult scattering_result_from_json(const nlohmann::json& j);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view raw);
/// Shortest decimal that parses back to the same double; -0 prints as 0.
std::string format_double(double value);

}  // namespace tempscat::app
