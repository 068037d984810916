#pragma once

#include <vector>

#include "cylflow/field.hpp"

namespace cylflow {

/// Off-grid evaluation of several node-valued scalar quantities at once.
///
/// Cubic Lagrange in r and z, trigonometric (exact on the ring's Fourier
/// content) in theta. The radial stencil crosses the axis by reflection:
/// the ring at r = -dr is ring 1 seen from theta + pi. Components must
/// therefore be single-valued scalars (Cartesian vector components are fine;
/// cylindrical r/theta components are not).
///
/// Points within 1e-9 R outside the mantle (or 1e-9 L outside a cap) are
/// clamped onto the boundary; anything further out throws OutOfDomain.
class Interpolator {
 public:
  /// Volume interpolation of the given fields.
  explicit Interpolator(const std::vector<const ScalarField*>& comps);
  /// Single-plane interpolation of cap fields (z is ignored by eval).
  explicit Interpolator(const std::vector<const CapField*>& comps);

  int n_components() const { return n_comp_; }
  int n_planes() const { return n_planes_; }

  /// Cartesian query point. `out` receives n_components() values.
  void eval(const Point& p, double* out) const;
  void eval_cyl(double r, double theta, double z, double* out) const;
  double eval1(const Point& p) const;

 private:
  void build(const std::vector<const double*>& comps);
  void accumulate(int ring_i, int k, double w, double* acc) const;

  GridPtr grid_;
  int n_comp_ = 0;
  int n_planes_ = 0;
  // coef_[((k * n_r + i) * n_comp + c) * n_theta + q], q indexes
  // (a_0, a_1 .. a_M, b_1 .. b_{M-1}) with the inverse-DFT factors folded in.
  std::vector<double> coef_;
};

/// Cubic Lagrange weights for nodes at offsets 0, 1, 2, 3 evaluated at t.
void lagrange4(double t, double w[4]);

/// Convenience for a single scalar value.
double interpolate(const ScalarField& s, const Point& p);
Vec3 interpolate(const VectorField& cartesian, const Point& p);

}  // namespace cylflow
