#pragma once

#include <cstdint>

#include "cylflow/boundary_data.hpp"

namespace cylflow {

/// Swirl V(r) = amplitude * 27/(4 R^3) * r (R - r)^2 on top of a unit axial
/// stream: v = (0, V(r), 1) in cylindrical components. A steady Euler flow
/// for every amplitude, with p' = V^2 / r.
struct SwirlProfile {
  double R;
  double amplitude;

  double V(double r) const;
  /// Axial vorticity (1/r)(r V)'.
  double omega(double r) const;
  /// int_0^r V(s)^2 / s ds.
  double head(double r) const;
};

/// Inflow data (g, h) of the swirl profile relative to the base flow
/// v0 = e_z, p0 = -1/2:  h = -omega,  g = V^2 / 2 + head.
InflowData columnar_swirl_data(GridPtr grid, double amplitude);

/// Smooth random inflow data satisfying the edge conditions: combinations of
/// (1 - rho^2)^2 rho^m {cos, sin}(m theta) for h and (1 - rho^2)^3 rho^m ...
/// for g, m in {0, 1, 2}, coefficients normal(0, 1) scaled by amplitude.
InflowData random_inflow_data(GridPtr grid, double amplitude, std::uint64_t seed);

}  // namespace cylflow
