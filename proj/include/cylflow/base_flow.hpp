#pragma once

#include <string>

#include "cylflow/field.hpp"

namespace cylflow {

/// Normal velocity v . n prescribed on the two caps (outward normals); the
/// mantle flux is zero.
struct FluxData {
  CapField phi_minus;  // on z = 0, must be <= -c < 0
  CapField phi_plus;   // on z = L, must be >= c > 0

  /// phi = -/+ speed on the caps.
  static FluxData uniform(GridPtr grid, double speed);
  /// phi = -/+ speed (1 + bump (1 - (r/R)^2)^2); radially flat at the edge.
  static FluxData bump(GridPtr grid, double speed, double bump);
};

struct FluxReport {
  double balance = 0.0;        // int phi_minus + int phi_plus
  double balance_scale = 0.0;  // int |phi_minus| + int |phi_plus|
  double c = 0.0;              // min(min phi_plus, min -phi_minus)
  double edge_violation = 0.0;  // max |d phi / dr| on the edge circles
  double edge_allowance = 0.0;  // truncation allowance of the difference stencil
  bool balanced = true;
  bool signed_ok = true;
  bool edge_ok = true;
};

FluxReport check_flux(const FluxData& flux);

struct Potential {
  ScalarField psi;
  FluxReport report;
  /// Set when the edge condition d phi / dn = 0 fails; the solve still runs.
  bool compatibility_warning = false;
  std::string warning;
};

/// Solves Laplace(psi) = 0 with d psi / dn = phi on the whole boundary,
/// normalized to zero mean. Throws IncompatibleData when the cap fluxes do not
/// balance, HypothesisViolation when a cap flux has the wrong sign.
Potential solve_potential(const FluxData& flux);

struct BaseFlow {
  ScalarField psi;
  VectorField v0;  // cylindrical frame
  ScalarField p0;
  double c_min = 0.0;  // minimum axial velocity over all nodes
  FluxData flux;       // empty when assembled from psi alone
};

/// v0 = grad psi, p0 = -|v0|^2 / 2. Throws StagnationDetected when the
/// axial velocity is not positive everywhere.
BaseFlow assemble_base(const ScalarField& psi);

/// solve_potential followed by assemble_base; keeps the flux data.
BaseFlow make_base_flow(const FluxData& flux);

/// Index of the node where the axial base velocity is smallest.
std::size_t argmin_axial(const BaseFlow& base);

}  // namespace cylflow
