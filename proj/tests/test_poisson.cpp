#include <cmath>
#include <numbers>
#include <random>

#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "cylflow/poisson.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cylflow;
using namespace cylflow::poisson;
using std::numbers::pi;

namespace {

ScalarField field(GridPtr g, const std::function<double(double, double, double)>& f) {
  return ScalarField::from_function(g, f);
}

}  // namespace

TEST_CASE("harmonic linear function is reproduced") {
  auto g = build_grid(1.0, 2.0, 9, 8, 17);
  const ScalarField z = field(g, [](double, double, double zz) { return zz; });
  const ScalarField u = solve(ScalarField(g), BcSpec::all_dirichlet(z));
  CHECK(norm(u - z, NormKind::Linf) <= 1e-9);
}

TEST_CASE("manufactured solution converges at second order") {
  // u* = r^2 cos(theta) sin(pi z / L); the closed-form Laplacian is checked
  // against a brute-force Cartesian difference quotient first.
  const double L = 1.5;
  oracle::Manufactured mf{L};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.1, 0.9);
  for (int q = 0; q < 20; ++q) {
    const double x = u01(rng) - 0.5, y = u01(rng) - 0.5, zz = L * u01(rng);
    const double brute = oracle::brute_laplacian([&](double a, double b, double c) { return mf.u_cart(a, b, c); },
                                                 x, y, zz);
    CHECK(mf.lap_cart(x, y, zz) == doctest::Approx(brute).epsilon(1e-6));
  }

  std::vector<double> err;
  for (int n : {9, 17, 33}) {
    auto g = build_grid(1.0, L, n, 8, n);
    const ScalarField exact = field(g, [&](double r, double t, double zz) { return mf.u(r, t, zz); });
    const ScalarField rhs = field(g, [&](double r, double t, double zz) { return mf.lap(r, t, zz); });
    const BcSpec bc = BcSpec::all_dirichlet(exact);
    CHECK(check_compatibility(rhs, bc, 1).pass());
    const ScalarField u = solve(rhs, bc);
    CHECK(Solver::interior_residual(u, rhs) <= 1e-10 * (1.0 + norm(rhs, NormKind::L2)));
    err.push_back(norm(u - exact, NormKind::L2));
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.9);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("all-Neumann problems") {
  const double R = 1.0, L = 1.2;
  // u* = x^2 - z^2 is harmonic, its normal derivatives balance exactly under
  // the trapezoidal surface rule, and the stencils are exact on quadratics.
  auto exact_fn = [](double r, double t, double z) {
    const double x = r * std::cos(t);
    return x * x - z * z;
  };
  for (int n : {9, 17}) {
    auto g = build_grid(R, L, n, 8, n);
    ScalarField exact = field(g, exact_fn);
    exact -= ScalarField(g, integrate(exact) / (pi * R * R * L));
    BcSpec bc;
    bc.inflow = {BcKind::Neumann, 0.0, field(g, [](double, double, double z) { return 2.0 * z; })};
    bc.outflow = {BcKind::Neumann, 0.0, field(g, [](double, double, double z) { return -2.0 * z; })};
    bc.mantle = {BcKind::Neumann, 0.0, field(g, [](double r, double t, double) {
                   return 2.0 * r * std::cos(t) * std::cos(t);
                 })};
    CHECK_THROWS_AS(Solver(g, bc), ValidationError);
    bc.gauge_fixed_neumann = true;
    const ScalarField u = solve(ScalarField(g), bc);
    CHECK(std::abs(integrate(u)) <= 1e-10);
    CHECK(norm(u - exact, NormKind::Linf) <= 1e-9);

    BcSpec bad = bc;
    bad.outflow.data = field(g, [](double, double, double) { return 1.0; });
    CHECK_THROWS_AS(solve(ScalarField(g), bad), IncompatibleData);
  }
}

TEST_CASE("linearity") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  auto random_field = [&]() {
    ScalarField s(g);
    for (double& x : s.values()) x = nd(rng);
    project_axis(s);
    return s;
  };
  BcSpec layout;
  layout.mantle.kind = BcKind::Robin;
  layout.mantle.alpha = 1.0;
  layout.inflow.kind = BcKind::Neumann;
  Solver solver(g, layout);
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarField a = random_field(), b = random_field();
    BcSpec ba = layout, bb = layout, bab = layout;
    ba.inflow.data = random_field();
    ba.outflow.data = random_field();
    ba.mantle.data = random_field();
    bb.inflow.data = random_field();
    bb.outflow.data = random_field();
    bb.mantle.data = random_field();
    const double al = nd(rng), be = nd(rng);
    bab.inflow.data = al * ba.inflow.data + be * bb.inflow.data;
    bab.outflow.data = al * ba.outflow.data + be * bb.outflow.data;
    bab.mantle.data = al * ba.mantle.data + be * bb.mantle.data;
    const ScalarField lhs = solver.solve(al * a + be * b, bab);
    const ScalarField rhs = al * solver.solve(a, ba) + be * solver.solve(b, bb);
    CHECK(norm(lhs - rhs, NormKind::L2) <= 1e-9 * norm(rhs, NormKind::L2));
  }
}

TEST_CASE("discrete maximum principle for axisymmetric Dirichlet data") {
  // For axisymmetric data the (r, z) stencil is of positive type, so the
  // discrete maximum principle holds exactly. Random data, random grids.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> nsz(5, 14);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = build_grid(0.5 + std::abs(u(rng)), 0.5 + std::abs(u(rng)), nsz(rng), 2 * (nsz(rng) / 2), nsz(rng));
    ScalarField data(g);
    for (int k = 0; k < g->n_z(); ++k)
      for (int i = 0; i < g->n_r(); ++i) {
        const double v = u(rng);
        for (int j = 0; j < g->n_theta(); ++j) data.at(i, j, k) = v;
      }
    double lo = 1e300, hi = -1e300;
    for (std::size_t n = 0; n < g->size(); ++n) {
      if (g->tag(n) == BoundaryTag::Interior) continue;
      lo = std::min(lo, data[n]);
      hi = std::max(hi, data[n]);
    }
    const ScalarField s = solve(ScalarField(g), BcSpec::all_dirichlet(data));
    for (double x : s.values()) {
      CHECK(x >= lo - 1e-9);
      CHECK(x <= hi + 1e-9);
    }
  }
}

TEST_CASE("compatibility checker examples") {
  const double R = 1.0;
  auto g = build_grid(R, 1.0, 9, 8, 9);
  {
    const CompatReport rep = check_compatibility(ScalarField(g), BcSpec::all_dirichlet(ScalarField(g)), 1);
    CHECK(rep.pass());
    CHECK(rep.minus.data_violation == 0.0);
    CHECK(rep.plus.rhs_violation == 0.0);
  }
  {
    BcSpec bc;
    bc.inflow.data = ScalarField(g, 1.0);
    bc.outflow.data = ScalarField(g, 1.0);
    bc.mantle.data = ScalarField(g, 0.0);
    const CompatReport rep = check_compatibility(ScalarField(g), bc, 0);
    CHECK(rep.minus.data_violation == doctest::Approx(1.0));
    CHECK_FALSE(rep.pass());
  }
  {
    // rhs = 2R - 3r takes the value -R on the edge circles.
    const ScalarField rhs = field(g, [&](double r, double, double) { return 2.0 * R - 3.0 * r; });
    const BcSpec bc = BcSpec::all_dirichlet(ScalarField(g));
    const CompatReport m1 = check_compatibility(rhs, bc, 1);
    CHECK(m1.minus.rhs_checked);
    CHECK(m1.minus.rhs_violation == doctest::Approx(R));
    CHECK(m1.plus.rhs_violation == doctest::Approx(R));
    CHECK_FALSE(m1.pass());
    CHECK(check_compatibility(rhs, bc, 0).pass());
    // with Neumann faces the edge value of the rhs is not constrained
    BcSpec nn = bc;
    nn.inflow.kind = BcKind::Neumann;
    nn.outflow.kind = BcKind::Neumann;
    nn.mantle.kind = BcKind::Neumann;
    CHECK_FALSE(check_compatibility(rhs, nn, 1).minus.rhs_checked);
  }
  {
    // Dirichlet cap / Neumann mantle: the cap data must have the mantle's
    // normal derivative. u = r^2 satisfies it with mantle data 2R.
    BcSpec bc;
    bc.inflow.data = field(g, [](double r, double, double) { return r * r; });
    bc.outflow.data = bc.inflow.data;
    bc.mantle = {BcKind::Neumann, 0.0, ScalarField(g, 2.0 * R)};
    CHECK(check_compatibility(ScalarField(g, 4.0), bc, 0).pass());
    CHECK(check_compatibility(ScalarField(g, 4.0), bc, -1).pass());
    bc.mantle.data = ScalarField(g, 0.0);
    const CompatReport rep = check_compatibility(ScalarField(g, 4.0), bc, 0);
    CHECK_FALSE(rep.pass());
    CHECK(rep.minus.data_violation == doctest::Approx(2.0 * R));
    // level -1 does not constrain mixed edges
    CHECK(check_compatibility(ScalarField(g, 4.0), bc, -1).pass());
  }
}
