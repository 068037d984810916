#pragma once

#include "cylflow/field.hpp"

namespace cylflow {

enum class NormKind { L2, H1, Linf };

/// Volume integral with trapezoidal weights (exact for constants).
double integrate(const ScalarField& s);

/// Discrete norms. L2 is sqrt(int |F|^2 dV). H1 adds the L2 norm of the
/// gradient of every Cartesian component. Linf is the largest pointwise
/// magnitude. Summation always runs in node order.
double norm(const ScalarField& s, NormKind kind);
double norm(const VectorField& f, NormKind kind);

/// L2 norm over the r = R mantle surface.
double mantle_norm(const ScalarField& s);

double cap_integral(const CapField& c);
double norm(const CapField& c, NormKind kind);
double norm(const CapVectorField& c, NormKind kind);

/// Tangential gradient of a cap field, Cartesian (x, y, 0).
CapVectorField cap_gradient(const CapField& c);

}  // namespace cylflow
