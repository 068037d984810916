#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cylflow/base_flow.hpp"
#include "cylflow/boundary_data.hpp"
#include "cylflow/divcurl.hpp"
#include "cylflow/transport.hpp"

namespace cylflow {

struct SolverConfig {
  double tol_fp = 1e-9;     // H1 norm of the update u_{k+1} - u_k
  int max_iter = 40;
  double relaxation = 1.0;  // omega in u_{k+1} = (1 - omega) u_k + omega B(u_k)
  double k1 = std::numeric_limits<double>::infinity();  // data-size bound (calibrate-k1); exceeding it is reported, not fatal
  double ball_radius = 0.0;  // > 0: ||u||_H1 above it is a hypothesis violation
  TransportOptions transport;  // c_min <= 0 means: take it from the base flow
  DivCurlOptions divcurl;
  bool record_residuals = true;  // momentum/div residual per iteration (costs one scalar transport)

  /// Throws ValidationError on out-of-range values.
  void check() const;
};

struct ResidualBundle {
  double momentum = 0.0;       // ||(v . grad) v + grad p||_L2
  double divergence = 0.0;     // ||div v||_L2
  double flux_mismatch = 0.0;  // ||v . n - phi||_L2 over the boundary
  double vorticity = 0.0;      // ||(v . grad) w - (w . grad) v||_L2, w = curl v
  double max() const;
};

/// Residuals of the steady Euler equations. phi is taken from base.flux,
/// or from v0 . n when the base flow carries no flux data.
ResidualBundle euler_residual(const VectorField& v, const ScalarField& p, const BaseFlow& base);

struct IterationRecord {
  int iter = 0;
  double update_norm = 0.0;  // ||u_{k+1} - u_k||_H1
  double ratio = std::numeric_limits<double>::quiet_NaN();  // update_norm / previous update_norm
  double momentum_res = std::numeric_limits<double>::quiet_NaN();
  double div_res = std::numeric_limits<double>::quiet_NaN();
  double u_norm = 0.0;       // ||u_{k+1}||_H1
};

struct FlowState {
  VectorField v;  // cylindrical
  VectorField u;  // v - v0
  ScalarField p;
  VectorField f;            // curl v, cylindrical
  VectorField f_transport;  // vorticity from the last transport, Cartesian
  std::vector<IterationRecord> history;
  bool converged = false;
  int iterations = 0;
  ResidualBundle residuals;
  double data_size = 0.0;
  bool within_k1 = true;

  /// Largest contraction ratio over the history (0 with fewer than two updates).
  double max_ratio() const;
};

struct BOutput {
  VectorField w;         // cylindrical
  VectorField f;         // transported vorticity, Cartesian
  CapVectorField f0;
  TransportField transport;
};

/// B(u) = divcurl(transport(v0 + u, make_f0(data, v0 + u))). Expects data
/// that passed validate(); propagates the hypothesis violations of the
/// stages (StagnationDetected, LengthExceeded, DegenerateInflow,
/// ValidationFailure).
BOutput apply_B(const VectorField& u, const InflowData& data, const BaseFlow& base, const DivCurlSolver& solver,
                const SolverConfig& cfg = {});

/// H = 1/2 |v|^2 + p is carried along streamlines from its inflow value
/// g + 1/2 |v0|^2 + p0; returns p = H - 1/2 |v|^2.
ScalarField recover_pressure(const VectorField& v, const InflowData& data, const BaseFlow& base,
                             const TransportOptions& opt = {});

/// Relaxed Picard iteration from u = 0. Returns the state whether or not
/// it converged (see `converged`). Throws ValidationFailure for data that
/// fail the edge conditions and propagates hypothesis violations.
FlowState fixed_point_iterate(const SolverConfig& cfg, const InflowData& data, const BaseFlow& base);

/// As fixed_point_iterate, but throws NoConvergence when max_iter is reached.
FlowState fixed_point_solve(const SolverConfig& cfg, const InflowData& data, const BaseFlow& base);

struct LipschitzPair {
  bool skipped = false;  // identical data
  double data_distance = 0.0;     // ||h1 - h2||_L2 + ||grad_T (g1 - g2)||_L2
  double velocity_ratio = 0.0;    // ||v1 - v2||_H1 / data_distance
  double pressure_ratio = 0.0;    // ||p1 - p2||_H1 / (data_distance + ||g1 - g2||_L2)
};

struct LipschitzReport {
  std::vector<LipschitzPair> pairs;
  double k2 = 0.0;  // max velocity ratio
  double k3 = 0.0;  // max pressure ratio
  double velocity_spread = 0.0;  // max / min over non-skipped pairs
  double pressure_spread = 0.0;
};

LipschitzReport lipschitz_probe(const std::vector<std::pair<InflowData, InflowData>>& pairs, const SolverConfig& cfg,
                                const BaseFlow& base);

/// ||u_2 - u_1|| / ||u_1 - u_0|| of the first two relaxed iterates; +inf if
/// a hypothesis check fails along the way, 0 for zero data.
double second_iterate_ratio(const InflowData& data, const BaseFlow& base, const DivCurlSolver& solver,
                            const SolverConfig& cfg);

struct K1Calibration {
  bool bracketed = false;  // the ratio crossed the threshold inside the search range
  double amplitude = 0.0;  // largest amplitude found with ratio below the threshold
  double k1 = 0.0;         // data size at that amplitude
  double ratio = 0.0;
  std::vector<std::pair<double, double>> samples;  // (amplitude, ratio)
};

/// Bisection on the amplitude of a data family until the second-iterate
/// ratio crosses `threshold`. The upper end is doubled from amp_hi until
/// it crosses (at most `max_doublings` times).
K1Calibration calibrate_k1(const std::function<InflowData(double)>& family, const BaseFlow& base,
                           const SolverConfig& cfg, double amp_lo, double amp_hi, double threshold = 0.9,
                           int bisections = 12, int max_doublings = 8);

}  // namespace cylflow
