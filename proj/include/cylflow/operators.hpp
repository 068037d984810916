#pragma once

#include <array>

#include "cylflow/field.hpp"

namespace cylflow {

// Discrete differential operators. The azimuthal direction is treated
// spectrally (per-ring DFT); r and z use second-order finite differences,
// centered inside and one-sided on r = R and on the caps. On the axis each
// output keeps only the Fourier modes a smooth field can have there: mode 0
// for scalars and z components, mode 1 for r and theta components.

/// Gradient in the cylindrical frame.
VectorField grad(const ScalarField& s);
/// Divergence; Cartesian inputs are rotated to the cylindrical frame first.
ScalarField div(const VectorField& f);
/// Curl, returned in the cylindrical frame.
VectorField curl(const VectorField& f);
ScalarField laplacian(const ScalarField& s);

/// Cartesian velocity gradient, J[3 * a + b] = d v_a / d x_b.
struct TensorField {
  std::array<ScalarField, 9> c;
  const GridPtr& grid() const { return c[0].grid(); }
};

TensorField cartesian_gradient(const VectorField& v);

/// (a . grad) b in the Cartesian frame.
VectorField advect(const VectorField& a, const VectorField& b);

/// Pointwise dot product (frame-independent when both share a frame).
ScalarField dot(const VectorField& a, const VectorField& b);

/// Keeps only the axis-admissible Fourier content on the r = 0 nodes of a
/// scalar: the ring mean.
void project_axis(ScalarField& s);

}  // namespace cylflow
