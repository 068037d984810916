#pragma once

#include <memory>
#include <string>

#include "cylflow/field.hpp"

namespace cylflow {

struct DivCurlOptions {
  /// Gate on ||div f||_L2 / ||f||_H1. The effective threshold is
  /// tol_div + div_gate_h2 * h^2 (h the largest grid spacing), since a
  /// transported vorticity is only divergence-free to O(h^2).
  double tol_div = 1e-6;
  double div_gate_h2 = 50.0;
  /// Gate on max |f . e_theta| / max |f| over both edge circles.
  double tol_edge = 1e-6;
};

struct DivCurlReport {
  double div_residual = 0.0;   // ||div f||_L2 / ||f||_H1
  double div_threshold = 0.0;
  double edge_tangential = 0.0;  // normalized
  double edge_threshold = 0.0;
  bool div_ok = true;
  bool edge_ok = true;
  bool pass() const { return div_ok && edge_ok; }
  std::string describe() const;
};

DivCurlReport validate_f(const VectorField& f, const DivCurlOptions& opt = {});

/// curl w = f, div w = 0, w . n = 0 through a vector potential u:
///   vector Laplacian(u) = f,
///   caps: u_r = u_theta = 0, d_z u_z = 0,
///   mantle: u_theta = u_z = 0, d_r u_r + u_r / R = 0,
/// then w = -curl u. Per Fourier mode the (u_r, u_theta) pair is solved as
/// one coupled system; factorizations are built once per grid.
class DivCurlSolver {
 public:
  explicit DivCurlSolver(GridPtr grid, DivCurlOptions opt = {});
  ~DivCurlSolver();
  DivCurlSolver(DivCurlSolver&&) noexcept;
  DivCurlSolver& operator=(DivCurlSolver&&) noexcept;

  const GridPtr& grid() const;
  const DivCurlOptions& options() const;

  /// Vector potential (cylindrical frame); no validation.
  VectorField potential(const VectorField& f) const;
  /// Validates f (throws ValidationFailure) and returns w, cylindrical.
  VectorField solve(const VectorField& f) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience.
VectorField solve_divcurl(const VectorField& f, const DivCurlOptions& opt = {});

/// ||w||_H1 / ||f||_L2, 0 for f = 0.
double divcurl_estimate(const VectorField& w, const VectorField& f);

}  // namespace cylflow
