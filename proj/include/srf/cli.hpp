#pragma once

// Experiment driver. Each command maps a RunConfig to a JSON payload; the
// srf-run tool wraps it with flag parsing and file output.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srf/channel.hpp"
#include "srf/linalg.hpp"

namespace srf {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Decompose, TwirlCheck, Workspace, MeanF, Concentration, Lipschitz, HaarMoments, Theorem1, Capacity, Net };
enum class OutputFormat { Json, Csv };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);

/// Invalid or incomplete configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::Capacity;
  int n = 12;
  double alpha = 2.0;
  double delta = 0.5;
  /// Per-command default when absent (rotations, states, pairs, draws or subspaces).
  std::optional<std::size_t> nSamples;
  RngSeed seed{1};
  std::string outputPath;
  OutputFormat format = OutputFormat::Json;
  std::optional<double> cPrime;
  double levyC = 1.0;
  /// Override of jMin, as 2j.
  std::optional<int> jMinTwice;
  std::optional<QuadratureSpec> quadrature;
  /// Unitary dimension for haar-moments.
  std::optional<Index> k;
  std::vector<double> gammas;
  Index dimS = 1;
  double epsilon = 0.5;
  bool timing = false;
};

struct RunResult {
  nlohmann::json config;
  std::string toolVersion = kToolVersion;
  std::optional<double> wallClockSeconds;
  nlohmann::json payload;
  std::optional<nlohmann::json> workspaceDescriptor;
};

/// Throws UsageError for an odd or non-positive N and for missing or
/// out-of-range command-specific fields.
void validate(const RunConfig& config);

std::size_t default_samples(Command c);

/// Validates, dispatches and returns the result. Infeasible parameters give a
/// payload with status "infeasible"; domain violations propagate as exceptions.
RunResult run(const RunConfig& config);

nlohmann::json to_json(const RunResult& r);

/// Two-column RFC-4180 CSV (CRLF line ends) of payload fields xField and yField,
/// rows ordered by x. Each payload contributes one row for scalar fields or one
/// row per element for equal-length arrays. UsageError when a field is missing.
std::string emit_curve(const std::vector<RunResult>& results, const std::string& xField, const std::string& yField);

/// {"error": {"kind": ..., "message": ...}}
nlohmann::json error_json(const std::string& kind, const std::string& message);

/// Full command-line entry point; returns the process exit status
/// (0 success, 2 usage error, 3 domain, dimension or resource error, 4 other).
int cli_main(int argc, char** argv);

}  // namespace srf
