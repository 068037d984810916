#include <cmath>

#include "cylflow/base_flow.hpp"
#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "doctest.h"

using namespace cylflow;

namespace {

double momentum_residual(const BaseFlow& b) {
  VectorField res = advect(b.v0, b.v0);
  res += to_cartesian(grad(b.p0));
  return norm(res, NormKind::L2);
}

}  // namespace

TEST_CASE("uniform flux gives uniform flow") {
  const double L = 2.0;
  auto g = build_grid(1.0, L, 9, 8, 17);
  const Potential pot = solve_potential(FluxData::uniform(g, 1.0));
  CHECK_FALSE(pot.compatibility_warning);
  const ScalarField exact = ScalarField::from_function(g, [&](double, double, double z) { return z - L / 2.0; });
  CHECK(norm(pot.psi - exact, NormKind::Linf) <= 1e-9);

  const BaseFlow b = assemble_base(pot.psi);
  CHECK(b.c_min == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t n = 0; n < g->size(); ++n) {
    CHECK(std::abs(b.v0.comp(0)[n]) <= 1e-9);
    CHECK(std::abs(b.v0.comp(1)[n]) <= 1e-9);
    CHECK(b.p0[n] == doctest::Approx(-0.5).epsilon(1e-9));
  }
}

TEST_CASE("unbalanced or wrongly signed flux is rejected") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  FluxData f{CapField(g, -1.0), CapField(g, 2.0)};
  CHECK_THROWS_AS(solve_potential(f), IncompatibleData);
  FluxData s{CapField(g, 1.0), CapField(g, -1.0)};
  CHECK_THROWS_AS(solve_potential(s), HypothesisViolation);
}

TEST_CASE("radially varying flux") {
  std::vector<double> curl_err, mom_err;
  for (int n : {9, 17, 33}) {
    auto g = build_grid(1.0, 1.5, n, 8, 2 * n - 1);
    const FluxData flux = FluxData::bump(g, 1.0, 0.1);
    const Potential pot = solve_potential(flux);
    CHECK_FALSE(pot.compatibility_warning);
    const BaseFlow b = assemble_base(pot.psi);

    // the minimum of the axial speed sits on a cap, never inside
    const BoundaryTag where = g->tag(argmin_axial(b));
    CHECK(where != BoundaryTag::Interior);
    CHECK(where != BoundaryTag::Mantle);
    CHECK(b.c_min >= 1.0 - 2.0 * g->dr() * g->dr());

    // normal flux reproduced on the caps to stencil order
    double flux_err = 0.0;
    for (int i = 0; i < g->n_r(); ++i)
      for (int j = 0; j < g->n_theta(); ++j) {
        flux_err = std::max(flux_err, std::abs(b.v0.comp(2)[g->index(i, j, 0)] + flux.phi_minus.at(i, j)));
      }
    CHECK(flux_err <= 0.05);

    curl_err.push_back(norm(curl(b.v0), NormKind::L2));
    mom_err.push_back(momentum_residual(b));
    CHECK(std::abs(integrate(pot.psi)) <= 1e-9);
  }
  // r-z derivative stencils commute, so curl(grad psi) is zero up to roundoff
  // here; the order requirement is then vacuous.
  for (std::size_t q = 1; q < 3; ++q)
    CHECK((curl_err[q] <= 1e-12 || std::log2(curl_err[q - 1] / curl_err[q]) >= 1.9));
  CHECK(std::log2(mom_err[0] / mom_err[1]) >= 1.5);
  CHECK(std::log2(mom_err[1] / mom_err[2]) >= 1.5);
}

TEST_CASE("flux with a non-flat edge profile is flagged but solved") {
  auto g = build_grid(1.0, 1.0, 13, 8, 13);
  const double R = 1.0;
  auto prof = [&](double r, double) { return 1.0 + 0.1 * (1.0 - (r / R) * (r / R)); };
  CapField plus = CapField::from_function(g, prof);
  const Potential pot = solve_potential({-1.0 * plus, plus});
  CHECK(pot.compatibility_warning);
  CHECK(pot.report.edge_violation == doctest::Approx(0.2).epsilon(1e-9));
  CHECK_NOTHROW(assemble_base(pot.psi));
}

TEST_CASE("stagnating potential is rejected") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  const ScalarField psi = ScalarField::from_function(g, [](double, double, double z) { return (z - 0.5) * (z - 0.5); });
  CHECK_THROWS_AS(assemble_base(psi), StagnationDetected);
}
