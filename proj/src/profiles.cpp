#include "cylflow/profiles.hpp"

#include <cmath>
#include <random>

namespace cylflow {

double SwirlProfile::V(double r) const {
  const double c = 27.0 / (4.0 * R * R * R);
  return amplitude * c * r * (R - r) * (R - r);
}

double SwirlProfile::omega(double r) const {
  const double c = 27.0 / (4.0 * R * R * R);
  // (r V)' / r with r V = a c r^2 (R - r)^2
  return 2.0 * amplitude * c * (R - r) * (R - 2.0 * r);
}

double SwirlProfile::head(double r) const {
  // V^2 / s = (a c)^2 s (R - s)^4, integrated term by term
  const double ac = amplitude * 27.0 / (4.0 * R * R * R);
  double sum = 0.0;
  const double binom[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
  for (int q = 0; q <= 4; ++q) {
    // binom[q] R^(4-q) s^(q+1)
    sum += binom[q] * std::pow(R, 4 - q) * std::pow(r, q + 2) / (q + 2);
  }
  return ac * ac * sum;
}

InflowData columnar_swirl_data(GridPtr grid, double amplitude) {
  const SwirlProfile sw{grid->radius(), amplitude};
  InflowData d;
  d.h = CapField::from_function(grid, [&](double r, double) { return -sw.omega(r); });
  d.g = CapField::from_function(grid, [&](double r, double) {
    const double v = sw.V(r);
    return 0.5 * v * v + sw.head(r);
  });
  return d;
}

InflowData random_inflow_data(GridPtr grid, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  // coefficient order: m = 0 (cos), m = 1 (cos, sin), m = 2 (cos, sin)
  double a[5], c[5];
  for (double& x : a) x = nd(rng);
  for (double& x : c) x = nd(rng);
  const double R = grid->radius();
  auto expand = [&](const double* coef, int power, double r, double t) {
    const double rho = r / R;
    const double w = std::pow(1.0 - rho * rho, power);
    return w * (coef[0] + rho * (coef[1] * std::cos(t) + coef[2] * std::sin(t)) +
                rho * rho * (coef[3] * std::cos(2.0 * t) + coef[4] * std::sin(2.0 * t)));
  };
  InflowData d;
  d.h = CapField::from_function(grid, [&](double r, double t) { return amplitude * expand(a, 2, r, t); });
  d.g = CapField::from_function(grid, [&](double r, double t) { return amplitude * expand(c, 3, r, t); });
  return d;
}

}  // namespace cylflow
