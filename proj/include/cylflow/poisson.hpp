#pragma once

#include <memory>
#include <string>

#include "cylflow/field.hpp"

namespace cylflow::poisson {

enum class BcKind { Dirichlet, Neumann, Robin };

/// Condition on one face. Neumann and Robin use the outward normal n:
///   Dirichlet: u = data,  Neumann: du/dn = data,  Robin: du/dn + alpha u = data.
/// Data are read from the face nodes of a full-grid field; an empty field
/// means zero data.
struct FaceBc {
  BcKind kind = BcKind::Dirichlet;
  double alpha = 0.0;
  ScalarField data;

  bool dirichlet() const { return kind == BcKind::Dirichlet; }
  bool fixes_level() const { return kind == BcKind::Dirichlet || (kind == BcKind::Robin && alpha != 0.0); }
  double value(std::size_t idx) const { return data.size() ? data[idx] : 0.0; }
};

struct BcSpec {
  FaceBc inflow;   // z = 0, outward normal -e_z
  FaceBc outflow;  // z = L, outward normal +e_z
  FaceBc mantle;   // r = R, outward normal +e_r
  /// Must be set to solve a problem with no level-fixing face; the solution
  /// is then normalized to zero volume mean.
  bool gauge_fixed_neumann = false;

  bool all_neumann() const {
    return !inflow.fixes_level() && !outflow.fixes_level() && !mantle.fixes_level();
  }

  static BcSpec all_dirichlet(const ScalarField& data);
};

struct EdgeCompat {
  std::string edge;           // "edge_minus" or "edge_plus"
  int dirichlet_faces = 0;    // number of adjacent Dirichlet faces
  bool data_checked = false;  // a data condition applies at this level
  double data_violation = 0.0;
  double data_allowance = 0.0;  // truncation allowance of the difference stencils
  bool rhs_checked = false;
  double rhs_violation = 0.0;
  bool pass = true;
};

struct CompatReport {
  EdgeCompat minus;
  EdgeCompat plus;
  double scale = 1.0;  // normalization: max(1, max|data|, max|rhs|)
  double tolerance = 1e-8;
  bool pass() const { return minus.pass && plus.pass; }
};

/// Edge-circle compatibility conditions between the boundary data of the two
/// faces meeting at an edge (and the right-hand side), at regularity level
/// m in {-1, 0, 1}. With K the number of Dirichlet faces at the edge:
///   K = 2: data agree on the edge (when m + K >= 1, i.e. always);
///   K = 1: the Neumann-face operator applied to the Dirichlet data equals the
///          Neumann data (when m >= 0);
///   K = 0: each face operator applied to the other face's data agrees
///          (when m >= 1);
///   K = 2 and m = 1: rhs vanishes on the edge.
/// Violations are measured on data normalized by `scale`.
CompatReport check_compatibility(const ScalarField& rhs, const BcSpec& bc, int level);

/// Factorized per-mode operators for one boundary-condition layout. Reusable
/// for any rhs and boundary data with the same face kinds.
class Solver {
 public:
  Solver(GridPtr grid, const BcSpec& layout);
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  const GridPtr& grid() const;

  /// Solves Laplace(u) = rhs with the given boundary data. Throws
  /// IncompatibleData when an all-Neumann problem violates the flux balance,
  /// SolverFailure when the residual check fails.
  ScalarField solve(const ScalarField& rhs, const BcSpec& bc) const;

  /// Interior residual L2 norm of the last kind of check solve() performs.
  static double interior_residual(const ScalarField& u, const ScalarField& rhs);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around Solver.
ScalarField solve(const ScalarField& rhs, const BcSpec& bc);

/// Flux balance of an all-Neumann problem: int rhs dV - sum_faces int data dS.
/// Also returns the scale used for the relative test through `scale`.
double neumann_imbalance(const ScalarField& rhs, const BcSpec& bc, double* scale);

}  // namespace cylflow::poisson
