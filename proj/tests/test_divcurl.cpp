#include <cmath>
#include <random>

#include "cylflow/divcurl.hpp"
#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cylflow;

namespace {

double order(double coarse, double fine) { return std::log2(coarse / fine); }

// Largest normal component of w over caps and mantle.
double normal_trace(const VectorField& w_in) {
  const VectorField w = to_cylindrical(w_in);
  const CylGrid& g = *w.grid();
  double m = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const NodeIndex id = g.unravel(n);
    if (id.k == 0 || id.k == g.n_z() - 1) m = std::max(m, std::abs(w.comp(2)[n]));
    if (id.i == g.n_r() - 1) m = std::max(m, std::abs(w.comp(0)[n]));
  }
  return m;
}

// L2 norm of a Cartesian vector field over nodes at least two spacings away
// from every face.
double interior_norm(const VectorField& d_in) {
  const VectorField d = to_cartesian(d_in);
  const CylGrid& g = *d.grid();
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const NodeIndex id = g.unravel(n);
    if (id.i >= g.n_r() - 2 || id.k < 2 || id.k > g.n_z() - 3) continue;
    const Vec3 v = d.at(n);
    s += g.volume_weight(id.i, id.k) * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  }
  return std::sqrt(s);
}

double interior_norm(const ScalarField& s) {
  return interior_norm(VectorField(s, ScalarField(s.grid()), ScalarField(s.grid()), Frame::Cartesian));
}

// w = curl(psi e_z) for psi = (R^2 - r^2) x (1 + 0.3 z^2): divergence free,
// tangent to every face; f = curl w worked out by hand.
struct TiltedPair {
  double R = 1.0;
  Vec3 w(double x, double y, double z) const {
    const double P = R * R - x * x - y * y, Z = 1.0 + 0.3 * z * z;
    return {-2.0 * x * y * Z, -(P - 2.0 * x * x) * Z, 0.0};
  }
  Vec3 f(double x, double y, double z) const {
    const double P = R * R - x * x - y * y, Z = 1.0 + 0.3 * z * z, dZ = 0.6 * z;
    return {(P - 2.0 * x * x) * dZ, -2.0 * x * y * dZ, 8.0 * x * Z};
  }
};

}  // namespace

TEST_CASE("tilted pair: hand-derived curl agrees with finite differences") {
  const TiltedPair tp;
  const double h = 1e-5;
  for (const auto& p : {Vec3{0.2, -0.3, 0.4}, Vec3{-0.5, 0.1, 0.9}}) {
    auto w = [&](double dx, double dy, double dz) { return tp.w(p[0] + dx, p[1] + dy, p[2] + dz); };
    auto d = [&](int comp, int axis) {
      Vec3 e{0.0, 0.0, 0.0};
      e[static_cast<std::size_t>(axis)] = h;
      return (w(e[0], e[1], e[2])[static_cast<std::size_t>(comp)] -
              w(-e[0], -e[1], -e[2])[static_cast<std::size_t>(comp)]) /
             (2.0 * h);
    };
    const Vec3 c{d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
    const Vec3 f = tp.f(p[0], p[1], p[2]);
    for (int a = 0; a < 3; ++a) CHECK(c[static_cast<std::size_t>(a)] == doctest::Approx(f[static_cast<std::size_t>(a)]).epsilon(1e-8));
  }
}

TEST_CASE("shear pair converges at second order") {
  const oracle::ShearPair sp;
  std::vector<double> err, dv, wn, cr, cr_in, est;
  for (int n : {9, 17, 33}) {
    auto g = build_grid(1.0, 1.0, n, 8, n);
    const VectorField f = VectorField::from_function(
        g, Frame::Cylindrical, [&](double r, double, double) { return Vec3{0.0, 0.0, sp.f_z(r)}; });
    CHECK(validate_f(f).pass());
    const VectorField exact = VectorField::from_function(
        g, Frame::Cylindrical, [&](double r, double, double) { return Vec3{0.0, sp.w_theta(r), 0.0}; });
    const VectorField w = solve_divcurl(f);
    err.push_back(norm(to_cartesian(w) - to_cartesian(exact), NormKind::L2) / norm(exact, NormKind::L2));
    dv.push_back(norm(div(w), NormKind::L2));
    wn.push_back(normal_trace(w));
    const VectorField res = to_cartesian(curl(w)) - to_cartesian(f);
    cr.push_back(norm(res, NormKind::L2));
    cr_in.push_back(interior_norm(res));
    est.push_back(divcurl_estimate(w, f));
  }
  MESSAGE("w error " << err[0] << " " << err[1] << " " << err[2]);
  MESSAGE("div w " << dv[0] << " " << dv[1] << " " << dv[2]);
  MESSAGE("w.n " << wn[0] << " " << wn[1] << " " << wn[2]);
  MESSAGE("curl w - f " << cr[0] << " " << cr[1] << " " << cr[2] << " (interior " << cr_in[2] << ")");
  MESSAGE("estimate " << est[0] << " " << est[1] << " " << est[2]);
  CHECK(order(err[1], err[2]) >= 1.9);
  for (const auto* v : {&dv, &wn}) CHECK(((*v)[2] <= 1e-11 || order((*v)[1], (*v)[2]) >= 1.9));
  // The residual of the composed operators sits in the last two mantle rings:
  // a one-sided difference inside w = -curl u, differenced again by curl.
  CHECK(cr_in[2] <= 1e-10);
  CHECK(order(cr[1], cr[2]) >= 1.4);
  CHECK(std::abs(est[2] / est[1] - 1.0) <= 0.1);
}

TEST_CASE("non-axisymmetric pair converges at second order") {
  const TiltedPair tp;
  std::vector<double> err, dv, wn, cr;
  for (int n : {9, 17, 33}) {
    auto g = build_grid(1.0, 1.0, n, 8, n);
    const VectorField f = VectorField::from_function(g, Frame::Cartesian, [&](double r, double t, double z) {
      return tp.f(r * std::cos(t), r * std::sin(t), z);
    });
    const VectorField exact = VectorField::from_function(g, Frame::Cartesian, [&](double r, double t, double z) {
      return tp.w(r * std::cos(t), r * std::sin(t), z);
    });
    const VectorField w = solve_divcurl(f);
    err.push_back(norm(to_cartesian(w) - exact, NormKind::L2) / norm(exact, NormKind::L2));
    dv.push_back(interior_norm(div(w)));
    wn.push_back(normal_trace(w));
    cr.push_back(interior_norm(to_cartesian(curl(w)) - f));
  }
  MESSAGE("w error " << err[0] << " " << err[1] << " " << err[2]);
  MESSAGE("interior div w " << dv[0] << " " << dv[1] << " " << dv[2]);
  MESSAGE("interior curl w - f " << cr[0] << " " << cr[1] << " " << cr[2]);
  MESSAGE("w.n " << wn[0] << " " << wn[1] << " " << wn[2]);
  CHECK(order(err[1], err[2]) >= 1.9);
  CHECK(wn[2] <= 1e-11);
  // composed-operator identities, same gate as the grid operator identities
  CHECK(order(dv[1], dv[2]) >= 1.7);
  CHECK(order(cr[1], cr[2]) >= 1.7);
}

TEST_CASE("zero input, linearity, homogeneity and determinism") {
  auto g = build_grid(1.0, 1.5, 11, 8, 13);
  DivCurlSolver s(g);
  const VectorField zero(g, Frame::Cylindrical);
  CHECK(norm(s.solve(zero), NormKind::Linf) == 0.0);
  CHECK(divcurl_estimate(zero, zero) == 0.0);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  auto random_field = [&]() {
    VectorField f(g, Frame::Cartesian);
    for (int a = 0; a < 3; ++a)
      for (double& x : f.comp(a).values()) x = nd(rng);
    for (int a = 0; a < 3; ++a) project_axis(f.comp(a));
    return f;
  };
  for (int trial = 0; trial < 3; ++trial) {
    const VectorField f1 = random_field(), f2 = random_field();
    const double a = nd(rng), b = nd(rng);
    const VectorField lhs = curl(s.potential(a * f1 + b * f2));
    const VectorField rhs = a * curl(s.potential(f1)) + b * curl(s.potential(f2));
    CHECK(norm(lhs - rhs, NormKind::Linf) <= 1e-10 * (1.0 + norm(lhs, NormKind::Linf)));
  }

  const oracle::ShearPair sp{1.0};
  const VectorField f = VectorField::from_function(
      g, Frame::Cylindrical, [&](double r, double, double) { return Vec3{0.0, 0.0, sp.f_z(r)}; });
  const VectorField w1 = s.solve(f), w2 = s.solve(f);
  CHECK(w1.comp(0).values() == w2.comp(0).values());
  CHECK(w1.comp(1).values() == w2.comp(1).values());
  CHECK(w1.comp(2).values() == w2.comp(2).values());
  const double r1 = divcurl_estimate(w1, f);
  const VectorField w3 = s.solve(3.5 * f);
  CHECK(divcurl_estimate(w3, 3.5 * f) == doctest::Approx(r1).epsilon(1e-10));
}

TEST_CASE("input validation") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  const VectorField shear = VectorField::from_function(
      g, Frame::Cylindrical, [](double r, double, double) { return Vec3{0.0, 0.0, 2.0 - 3.0 * r}; });
  CHECK(validate_f(shear).pass());
  const VectorField axial = VectorField::from_function(
      g, Frame::Cylindrical, [](double, double, double) { return Vec3{0.0, 0.0, 1.0}; });
  CHECK(validate_f(axial).pass());
  CHECK(validate_f(axial).div_residual <= 1e-14);
  const VectorField azimuthal = VectorField::from_function(
      g, Frame::Cylindrical, [](double, double, double) { return Vec3{0.0, 1.0, 0.0}; });
  const DivCurlReport bad = validate_f(azimuthal);
  CHECK_FALSE(bad.edge_ok);
  CHECK(bad.edge_tangential == doctest::Approx(1.0));
  CHECK_THROWS_AS(solve_divcurl(azimuthal), ValidationFailure);

  const VectorField source = VectorField::from_function(
      g, Frame::Cartesian, [](double r, double t, double) { return Vec3{r * std::cos(t), 0.0, 0.0}; });
  const DivCurlReport div_bad = validate_f(source);
  CHECK_FALSE(div_bad.div_ok);
  CHECK_THROWS_AS(solve_divcurl(source), ValidationFailure);
}
