#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cylflow/base_flow.hpp"
#include "cylflow/boundary_data.hpp"
#include "cylflow/euler_solver.hpp"
#include "cylflow/grid.hpp"

namespace cylflow {

struct GeometryConfig {
  double radius = 1.0;
  double length = 2.0;
  int n_r = 17;
  int n_theta = 8;
  int n_z = 17;
};

struct FluxConfig {
  std::string profile = "uniform";  // uniform | bump
  double speed = 1.0;
  double bump = 0.0;
};

struct InflowConfig {
  std::string profile = "zero";  // zero | columnar | random
  double amplitude = 0.0;
  std::uint64_t seed = 1;
};

struct OutputConfig {
  std::string directory = "cylflow_out";
  bool csv = true;
  bool vtk = true;
};

/// Parameters of the calibrate-k1 and probe-lipschitz subcommands.
struct ProbeConfig {
  double amp_lo = 0.01;
  double amp_hi = 0.1;
  double threshold = 0.9;
  int bisections = 10;
  double lipschitz_amplitude = 0.05;
};

struct RunConfig {
  GeometryConfig geometry;
  FluxConfig flux;
  InflowConfig inflow;
  SolverConfig solver;
  OutputConfig output;
  ProbeConfig probe;

  /// Throws ValidationError.
  void validate() const;
};

/// INI text with sections [geometry], [flux], [inflow], [solver], [output],
/// [probe]; every key is optional. Unknown sections or keys and malformed
/// values throw ParseError, out-of-range values ValidationError.
/// `source` only labels diagnostics.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");

/// parse_config on a file; CYLFLOW_OUTPUT_DIR, when set, replaces
/// output.directory. Throws IoError when the file cannot be opened.
RunConfig load_config(const std::string& path);

/// The config written back as INI (all keys, defaults included).
std::string to_ini(const RunConfig& cfg);

GridPtr make_grid(const RunConfig& cfg);
FluxData make_flux(const RunConfig& cfg, const GridPtr& grid);
/// Inflow data of the configured profile at the given amplitude.
InflowData make_inflow(const RunConfig& cfg, const GridPtr& grid, double amplitude);
inline InflowData make_inflow(const RunConfig& cfg, const GridPtr& grid) {
  return make_inflow(cfg, grid, cfg.inflow.amplitude);
}

}  // namespace cylflow
