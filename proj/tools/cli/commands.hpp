#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gsteer::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUnphysical = 2,
  kParseError = 3,
  kConfigError = 4,
};

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
};

/// Parses "MIN:MAX:STEPS". Returns nothing on malformed text.
std::optional<GridSpec> parse_grid(const std::string& text);

struct RunConfig {
  std::string input;
  std::string output;  ///< empty: stdout
  std::string format = "json";
  double tol = 1e-9;
  std::uint64_t seed = 20141218;
  std::size_t samples = 1000000;
  std::size_t trials = 1000;
  double eta = 0.5;
  std::string grid;  ///< raw MIN:MAX:STEPS, command-specific default when empty
  double s_max = 10.0;
  double a = 1e8;
  bool bits = false;
  unsigned workers = 0;
};

/// Each command writes its payload to `out` and diagnostics to `err` and
/// returns the process exit code.
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan_regions(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full CLI entry point (argument parsing, --output redirection).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gsteer::cli
