#include "cylflow/base_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "cylflow/poisson.hpp"

namespace cylflow {

FluxData FluxData::uniform(GridPtr grid, double speed) {
  return {CapField(grid, -speed), CapField(grid, speed)};
}

FluxData FluxData::bump(GridPtr grid, double speed, double bump) {
  const double R = grid->radius();
  auto prof = [=](double r, double) {
    const double s = 1.0 - (r / R) * (r / R);
    return speed * (1.0 + bump * s * s);
  };
  CapField plus = CapField::from_function(grid, prof);
  return {-1.0 * plus, plus};
}

FluxReport check_flux(const FluxData& flux) {
  const CylGrid& g = *flux.phi_minus.grid();
  FluxReport rep;
  rep.balance = cap_integral(flux.phi_minus) + cap_integral(flux.phi_plus);
  CapField am = flux.phi_minus, ap = flux.phi_plus;
  for (double& x : am.values()) x = std::abs(x);
  for (double& x : ap.values()) x = std::abs(x);
  rep.balance_scale = cap_integral(am) + cap_integral(ap);
  rep.balanced = std::abs(rep.balance) <= 1e-8 * rep.balance_scale;

  double c = 1e300;
  for (double x : flux.phi_plus.values()) c = std::min(c, x);
  for (double x : flux.phi_minus.values()) c = std::min(c, -x);
  rep.c = c;
  rep.signed_ok = c > 0.0;

  // radial derivative of the cap flux on the edge circle, one-sided
  const int n = g.n_r() - 1;
  const double h = g.dr();
  double scale = 1.0;
  for (double x : am.values()) scale = std::max(scale, x);
  for (double x : ap.values()) scale = std::max(scale, x);
  for (const CapField* phi : {&flux.phi_minus, &flux.phi_plus}) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const double f0 = phi->at(n, j), f1 = phi->at(n - 1, j), f2 = phi->at(n - 2, j), f3 = phi->at(n - 3, j);
      const double d = (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h);
      const double third = (f0 - 3.0 * f1 + 3.0 * f2 - f3) / (h * h * h);
      rep.edge_violation = std::max(rep.edge_violation, std::abs(d));
      rep.edge_allowance = std::max(rep.edge_allowance, 2.0 * std::abs(h * h / 3.0 * third));
    }
  }
  rep.edge_ok = rep.edge_violation <= 1e-8 * scale + rep.edge_allowance;
  return rep;
}

Potential solve_potential(const FluxData& flux) {
  const GridPtr& grid = flux.phi_minus.grid();
  require_same_grid(grid, flux.phi_plus.grid(), "solve_potential");
  Potential out;
  out.report = check_flux(flux);
  if (!out.report.balanced) {
    std::ostringstream os;
    os << "solve_potential: cap fluxes do not balance (int phi dS = " << out.report.balance << ")";
    throw IncompatibleData(os.str());
  }
  if (!out.report.signed_ok) {
    std::ostringstream os;
    os << "solve_potential: flux must be negative on the inflow cap and positive on the outflow cap "
          "(min margin c = "
       << out.report.c << ")";
    throw HypothesisViolation(os.str());
  }
  if (!out.report.edge_ok) {
    out.compatibility_warning = true;
    std::ostringstream os;
    os << "flux edge condition d phi/dn = 0 violated on the edge circles (max " << out.report.edge_violation
       << ")";
    out.warning = os.str();
  }

  poisson::BcSpec bc;
  bc.inflow = {poisson::BcKind::Neumann, 0.0, flux.phi_minus.extrude()};
  bc.outflow = {poisson::BcKind::Neumann, 0.0, flux.phi_plus.extrude()};
  bc.mantle = {poisson::BcKind::Neumann, 0.0, ScalarField()};
  bc.gauge_fixed_neumann = true;
  out.psi = poisson::solve(ScalarField(grid), bc);
  return out;
}

BaseFlow assemble_base(const ScalarField& psi) {
  BaseFlow b;
  b.psi = psi;
  b.v0 = grad(psi);
  b.p0 = ScalarField(psi.grid());
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const Vec3 v = b.v0.at(n);
    b.p0[n] = -0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  }
  b.c_min = *std::min_element(b.v0.comp(2).values().begin(), b.v0.comp(2).values().end());
  if (!(b.c_min > 0.0)) {
    std::ostringstream os;
    os << "assemble_base: axial base velocity is not positive (min " << b.c_min
       << "); the base flow must have no stagnation points";
    throw StagnationDetected(os.str());
  }
  return b;
}

BaseFlow make_base_flow(const FluxData& flux) {
  BaseFlow b = assemble_base(solve_potential(flux).psi);
  b.flux = flux;
  return b;
}

std::size_t argmin_axial(const BaseFlow& base) {
  const auto& vz = base.v0.comp(2).values();
  return static_cast<std::size_t>(std::min_element(vz.begin(), vz.end()) - vz.begin());
}

}  // namespace cylflow
