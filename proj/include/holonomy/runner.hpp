#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "holonomy/report.hpp"
#include "holonomy/scenario.hpp"

namespace holonomy {

/// A library error raised while evaluating one scenario.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string scenario, ErrorCode code, const std::string& message)
      : std::runtime_error("scenario '" + scenario + "': " + message), scenario_(std::move(scenario)), code_(code) {}
  const std::string& scenario() const { return scenario_; }
  ErrorCode code() const { return code_; }

 private:
  std::string scenario_;
  ErrorCode code_;
};

/// Command-line overrides; unset members fall back to the config, then to
/// per-subcommand defaults.
struct RunOptions {
  std::optional<int> steps;
  std::optional<PolarGrid> grid;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::optional<std::string> suite;
  int threads = 1;
};

const std::vector<std::string>& subcommands();

/// Rows of a subcommand, ordered by scenario (then by radius for
/// sweep-radius). Throws ConfigError and ScenarioError.
std::vector<VerificationReport> run_subcommand(const std::string& name, const LabConfig& config,
                                               const RunOptions& options);

/// Header "scenario_id,lhs,rhs,slack,tolerance,pass,N,grid,seed", then one
/// line per row with numbers printed as %.17g. With `details`, the note and
/// the named extras are appended as two more columns.
void write_csv(std::ostream& out, const std::vector<VerificationReport>& rows, bool details = false);

/// 0 if every row passes, 1 otherwise.
int exit_status(const std::vector<VerificationReport>& rows);
/// Exit status of an error: 3 for cut-locus, breakdown and singular-input
/// failures, 2 for everything else.
int exit_status(ErrorCode code);

/// HOLONOMY_LAB_THREADS if set (positive integer), else the hardware count.
/// Throws ConfigError for an invalid value.
int thread_limit();

}  // namespace holonomy
