#pragma once

#include "cylflow/field.hpp"

namespace cylflow {

/// Inflow-cap data: g perturbs the Bernoulli head, h is the normal vorticity
/// n . curl v with n = -e_z.
struct InflowData {
  CapField g;
  CapField h;
  /// Set by project_edges(): make_f0 then forces grad g = 0 on the edge circle.
  bool edge_projected = false;

  static InflowData zero(GridPtr grid);
  const GridPtr& grid() const { return g.grid(); }
};

/// ||h||_H1 + ||grad_T g||_H1 on the inflow cap.
double data_size(const InflowData& d);

struct InflowReport {
  double edge_h = 0.0;       // max |h| on the edge circle
  double edge_grad_g = 0.0;  // max |grad_T g| on the edge circle
  double edge_allowance = 0.0;  // truncation allowance of the one-sided radial derivative
  double data_size = 0.0;
  double k1 = 0.0;
  bool edge_ok = true;
  bool within_k1 = true;  // a warning only
  bool pass() const { return edge_ok; }
};

/// Edge-vanishing conditions h = grad_T g = 0 (within 1e-8) and the size
/// bound data_size <= k1 (reported, not enforced).
InflowReport validate(const InflowData& data, double k1);

/// Zeroes h on the edge circle and marks grad_T g for zeroing there. Only
/// meaningful after validate() passed: it removes roundoff-level residue so
/// downstream edge conditions hold exactly.
void project_edges(InflowData& data);

/// Inflow vorticity f0 (Cartesian, on the z = 0 plane) from the data and
/// the velocity v:  f0 = (h v - n x grad_T g) / (v . n),  n = -e_z.
/// Throws DegenerateInflow when |v . n| < c_min / 2 somewhere on the cap.
CapVectorField make_f0(const InflowData& data, const VectorField& v, double c_min);

}  // namespace cylflow
