#pragma once

#include <exception>
#include <optional>
#include <string>

#include "cylflow/config.hpp"
#include "json.hpp"

namespace cylflow {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitNoConvergence = 2,
  kExitHypothesis = 3,
  kExitConfig = 4,
  kExitIo = 5,
  kExitOther = 1,
};

/// Maps a library exception onto an exit code.
int exit_code_for(const std::exception& e);

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::optional<FlowState> state;  // set by run_command when a state exists
};

/// base flow -> inflow data -> fixed point -> residual audit. Library
/// errors are caught and recorded in the report. With write_outputs the
/// output directory receives report.json, history.csv and the configured
/// field exports (fields.csv, fields.vtk).
CommandResult run_command(const RunConfig& cfg, bool write_outputs = true);

/// Invariant checks on the configured grid, base flow and data, without the
/// fixed-point loop: one "checks" entry per property, exit 3 if any fails.
CommandResult verify_command(const RunConfig& cfg);

/// K1 bisection on the configured inflow family (columnar or random).
CommandResult calibrate_k1_command(const RunConfig& cfg);

/// n_pairs pairs of independent random admissible data at
/// probe.lipschitz_amplitude.
CommandResult probe_lipschitz_command(const RunConfig& cfg, int n_pairs);

/// Writes `report` as indented JSON into the configured output directory
/// (created if needed). Throws IoError.
void write_report(const RunConfig& cfg, const std::string& name, const nlohmann::json& report);

}  // namespace cylflow
