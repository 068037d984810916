#include <cmath>
#include <random>

#include "cylflow/boundary_data.hpp"
#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/profiles.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cylflow;

namespace {

VectorField axial(GridPtr g, double w) {
  return VectorField::from_function(g, Frame::Cylindrical, [=](double, double, double) { return Vec3{0.0, 0.0, w}; });
}

}  // namespace

TEST_CASE("zero data") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  const InflowData d = InflowData::zero(g);
  const CapVectorField f0 = make_f0(d, axial(g, 1.0), 1.0);
  CHECK(norm(f0, NormKind::Linf) == 0.0);
  const InflowReport rep = validate(d, 1.0);
  CHECK(rep.pass());
  CHECK(rep.data_size == 0.0);
}

TEST_CASE("tangential part from the head gradient") {
  // v = e_z, grad_T g = e_x: f0 = -(n x e_x) / (v . n) with n = -e_z, v.n = -1,
  // so f0 = n x e_x = -e_y.
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  InflowData d = InflowData::zero(g);
  d.g = CapField::from_function(g, [](double r, double t) { return r * std::cos(t); });
  const CapVectorField f0 = make_f0(d, axial(g, 1.0), 1.0);
  for (std::size_t n = 0; n < f0.c[0].size(); ++n) {
    CHECK(std::abs(f0.c[0][n]) <= 1e-12);
    CHECK(f0.c[1][n] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(f0.c[2][n]) <= 1e-12);
  }
}

TEST_CASE("normal part reproduces h") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  InflowData d = InflowData::zero(g);
  d.h = CapField::from_function(g, [](double r, double t) { return std::sin(3.0 * r) * std::cos(t) + 0.2; });
  // v = e_z: f0 = -h e_z, tangential part zero
  const CapVectorField f0 = make_f0(d, axial(g, 1.0), 1.0);
  for (std::size_t n = 0; n < f0.c[0].size(); ++n) {
    CHECK(f0.c[2][n] == doctest::Approx(-d.h[n]).epsilon(1e-15));
    CHECK(f0.c[0][n] == 0.0);
    CHECK(f0.c[1][n] == 0.0);
  }
  // general inflow velocity: n . f0 = h still holds to roundoff
  const VectorField v = VectorField::from_function(g, Frame::Cylindrical, [](double r, double t, double) {
    return Vec3{0.1 * r * std::sin(t), 0.2 * r, 1.3 - 0.2 * r * r};
  });
  const CapVectorField f1 = make_f0(d, v, 1.0);
  for (std::size_t n = 0; n < f1.c[0].size(); ++n) CHECK(-f1.c[2][n] == doctest::Approx(d.h[n]).epsilon(1e-14));
}

TEST_CASE("degenerate inflow") {
  auto g = build_grid(1.0, 1.0, 9, 8, 9);
  CHECK_THROWS_AS(make_f0(InflowData::zero(g), axial(g, 0.3), 1.0), DegenerateInflow);
  CHECK_THROWS_AS(make_f0(InflowData::zero(g), axial(g, -1.0), 1.0), DegenerateInflow);
}

TEST_CASE("validation examples") {
  auto g = build_grid(1.0, 1.0, 17, 8, 9);
  InflowData d = InflowData::zero(g);
  d.h = CapField(g, 1.0);
  const InflowReport bad = validate(d, 10.0);
  CHECK_FALSE(bad.pass());
  CHECK(bad.edge_h == doctest::Approx(1.0));

  std::vector<double> sizes;
  for (double eps : {0.01, 0.02, 0.04}) {
    InflowData e = InflowData::zero(g);
    e.h = CapField::from_function(g, [&](double r, double) {
      const double s = 1.0 - r * r;
      return eps * s * s;
    });
    const InflowReport rep = validate(e, 10.0);
    CHECK(rep.pass());
    sizes.push_back(rep.data_size);
  }
  CHECK(sizes[1] == doctest::Approx(2.0 * sizes[0]).epsilon(1e-12));
  CHECK(sizes[2] == doctest::Approx(4.0 * sizes[0]).epsilon(1e-12));
  CHECK(sizes[0] > 0.0);

  // a head with a radial slope on the edge, small or not, is rejected
  for (double a : {1e-3, 1.0}) {
    InflowData e = InflowData::zero(g);
    e.g = CapField::from_function(g, [&](double r, double t) { return a * r * r * (1.0 + 0.5 * std::cos(t)); });
    CHECK_FALSE(validate(e, 10.0).pass());
  }
  // admissible random data pass on a coarse grid
  for (std::uint64_t seed = 1; seed <= 10; ++seed) CHECK(validate(random_inflow_data(g, 0.05, seed), 10.0).pass());

  const InflowReport big = validate(columnar_swirl_data(g, 0.05), 1e-6);
  CHECK(big.pass());
  CHECK_FALSE(big.within_k1);
}

TEST_CASE("library swirl data agree with the closed-form oracle") {
  auto g = build_grid(1.0, 1.0, 17, 8, 9);
  const oracle::ColumnarSwirl sw{1.0, 0.05, 1.0};
  const InflowData d = columnar_swirl_data(g, 0.05);
  for (int i = 0; i < g->n_r(); ++i) {
    CHECK(d.h.at(i, 0) == doctest::Approx(sw.h(g->r(i))).epsilon(1e-13));
    CHECK(d.g.at(i, 3) == doctest::Approx(sw.g(g->r(i))).epsilon(1e-13));
  }
  // the oracle's head integral against brute-force quadrature
  const double r = 0.7;
  double quad = 0.0;
  const int n = 20000;
  for (int q = 0; q < n; ++q) {
    const double s = (q + 0.5) * r / n;
    quad += sw.V(s) * sw.V(s) / s * (r / n);
  }
  CHECK(sw.swirl_head(r) == doctest::Approx(quad).epsilon(1e-7));
}

TEST_CASE("make_f0 is linear and vanishes on the edge for admissible data") {
  auto g = build_grid(1.0, 1.0, 33, 12, 9);
  const VectorField v = VectorField::from_function(g, Frame::Cylindrical, [](double r, double, double) {
    return Vec3{0.0, 0.1 * r * (1.0 - r), 1.0 + 0.05 * r * r};
  });
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    InflowData a = random_inflow_data(g, 0.05, seed), b = random_inflow_data(g, 0.03, seed + 100);
    const InflowReport ra = validate(a, 1.0);
    REQUIRE(ra.pass());
    InflowData ab{a.g + b.g, a.h + b.h, false};
    const CapVectorField fa = make_f0(a, v, 1.0), fb = make_f0(b, v, 1.0), fab = make_f0(ab, v, 1.0);
    for (std::size_t n = 0; n < fa.c[0].size(); ++n)
      for (int c = 0; c < 3; ++c)
        CHECK(std::abs(fab.c[c][n] - fa.c[c][n] - fb.c[c][n]) <= 1e-12);

    project_edges(a);
    const CapVectorField fp = make_f0(a, v, 1.0);
    double edge = 0.0;
    for (int j = 0; j < g->n_theta(); ++j) {
      const std::size_t idx = static_cast<std::size_t>(j + g->n_theta() * (g->n_r() - 1));
      edge = std::max(edge, std::hypot(std::hypot(fp.c[0][idx], fp.c[1][idx]), fp.c[2][idx]));
    }
    CHECK(edge <= 1e-7);
  }
}
