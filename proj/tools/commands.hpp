#pragma once

// Command implementations behind the `cohfilt` executable. Each command
// returns its JSON report and exit code instead of printing, so tests can
// drive them directly.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cohfilt::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 2,
  kValidationFailure = 3,
  kPaperMismatch = 4,
  kPropertyFailure = 5,
};

struct RunConfig {
  std::string command;
  std::optional<std::string> input_path;
  std::optional<std::size_t> dim;
  std::uint64_t seed = 42;
  std::optional<std::size_t> samples;  // unset: command-specific default
  std::map<std::string, double> tol;
  std::optional<std::string> output_path;
};

// Named tolerances accepted by --tol name=value.
struct Tolerances {
  double herm_tol = 1e-10;
  double trace_tol = 1e-10;
  double psd_tol = 1e-10;
  double measure_tol = 1e-9;
  double bisect_tol = 1e-8;
  double bisect_psd_tol = 1e-13;
  double rank_tol = 1e-10;
};

// Throws cohfilt::Error(ParseError) on an unknown name.
Tolerances resolve_tolerances(const std::map<std::string, double>& overrides);

// Parses "name=value"; throws ParseError when malformed.
std::pair<std::string, double> parse_tol_flag(const std::string& flag);

struct CommandResult {
  nlohmann::json report;
  int exit_code = kOk;
  std::vector<std::string> summary;  // one human-readable line per check
};

inline constexpr std::size_t kDefaultOracleSamples = 100000;
inline constexpr std::size_t kDefaultSuiteStates = 200;

CommandResult run_command(const RunConfig& config);

CommandResult cmd_filtrate(const RunConfig& config);
CommandResult cmd_measure(const RunConfig& config);
CommandResult cmd_paper_examples(const RunConfig& config);
CommandResult cmd_suite(const RunConfig& config);
CommandResult cmd_oracle(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

// Report JSON with timings stripped, dumped compactly: the part covered by
// the determinism contract.
std::string deterministic_part(const nlohmann::json& report);

}  // namespace cohfilt::cli
