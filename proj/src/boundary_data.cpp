#include "cylflow/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"

namespace cylflow {

InflowData InflowData::zero(GridPtr grid) { return {CapField(grid), CapField(grid), false}; }

double data_size(const InflowData& d) {
  return norm(d.h, NormKind::H1) + norm(cap_gradient(d.g), NormKind::H1);
}

InflowReport validate(const InflowData& data, double k1) {
  require_same_grid(data.g.grid(), data.h.grid(), "validate");
  const CylGrid& g = *data.grid();
  InflowReport rep;
  const int n = g.n_r() - 1;
  const CapVectorField grad_g = cap_gradient(data.g);
  const double h = g.dr();
  for (int j = 0; j < g.n_theta(); ++j) {
    rep.edge_h = std::max(rep.edge_h, std::abs(data.h.at(n, j)));
    const std::size_t idx = static_cast<std::size_t>(j + g.n_theta() * n);
    rep.edge_grad_g = std::max(rep.edge_grad_g, std::hypot(grad_g.c[0][idx], grad_g.c[1][idx]));
    // truncation of the 3-point one-sided radial derivative, estimated
    // against the 5-point one (the 4-point backward third difference on
    // coarse grids when fewer rings exist)
    auto at = [&](int i) { return data.g.at(i, j); };
    double allowance;
    if (n >= 4) {
      const double d3 = (3.0 * at(n) - 4.0 * at(n - 1) + at(n - 2)) / (2.0 * h);
      const double d5 = (25.0 * at(n) - 48.0 * at(n - 1) + 36.0 * at(n - 2) - 16.0 * at(n - 3) + 3.0 * at(n - 4)) /
                        (12.0 * h);
      allowance = std::abs(d3 - d5);
    } else {
      allowance = std::abs((at(n) - 3.0 * at(n - 1) + 3.0 * at(n - 2) - at(n - 3)) / (3.0 * h));
    }
    rep.edge_allowance = std::max(rep.edge_allowance, 2.0 * allowance);
  }
  rep.edge_ok = rep.edge_h <= 1e-8 && rep.edge_grad_g <= 1e-8 + rep.edge_allowance;
  rep.data_size = data_size(data);
  rep.k1 = k1;
  rep.within_k1 = rep.data_size <= k1;
  return rep;
}

void project_edges(InflowData& data) {
  const CylGrid& g = *data.grid();
  for (int j = 0; j < g.n_theta(); ++j) data.h.at(g.n_r() - 1, j) = 0.0;
  data.edge_projected = true;
}

CapVectorField make_f0(const InflowData& data, const VectorField& v, double c_min) {
  require_same_grid(data.grid(), v.grid(), "make_f0");
  const CylGrid& g = *data.grid();
  const VectorField vc = to_cartesian(v);
  CapVectorField grad_g = cap_gradient(data.g);
  if (data.edge_projected) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const std::size_t idx = static_cast<std::size_t>(j + g.n_theta() * (g.n_r() - 1));
      grad_g.c[0][idx] = 0.0;
      grad_g.c[1][idx] = 0.0;
    }
  }
  CapVectorField f0;
  for (auto& c : f0.c) c = CapField(data.grid());
  for (std::size_t idx = 0; idx < data.h.size(); ++idx) {
    const double vx = vc.comp(0)[idx], vy = vc.comp(1)[idx], vz = vc.comp(2)[idx];  // plane k = 0
    const double vn = -vz;
    if (!(std::abs(vn) >= 0.5 * c_min) || vn >= 0.0) {
      std::ostringstream os;
      os << "make_f0: inflow velocity v.n = " << vn << " is not bounded away from zero (need v.n <= -"
         << 0.5 * c_min << "); the inflow condition fails";
      throw DegenerateInflow(os.str());
    }
    const double hh = data.h[idx];
    // n x grad g with n = -e_z
    const double cx = grad_g.c[1][idx], cy = -grad_g.c[0][idx];
    f0.c[0][idx] = (hh * vx - cx) / vn;
    f0.c[1][idx] = (hh * vy - cy) / vn;
    f0.c[2][idx] = hh * vz / vn;
  }
  return f0;
}

}  // namespace cylflow
