#pragma once

// Closed-form reference solutions used by the tests. Everything here is
// written independently of the library's discretization (plain formulas and
// brute-force difference quotients in Cartesian coordinates).

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

/// Fourth-order central-difference Laplacian in Cartesian coordinates.
inline double brute_laplacian(const std::function<double(double, double, double)>& f, double x, double y,
                              double z, double h = 1e-3) {
  auto d2 = [&](double dx, double dy, double dz) {
    return (-f(x + 2 * dx, y + 2 * dy, z + 2 * dz) + 16 * f(x + dx, y + dy, z + dz) - 30 * f(x, y, z) +
            16 * f(x - dx, y - dy, z - dz) - f(x - 2 * dx, y - 2 * dy, z - 2 * dz)) /
           (12 * h * h);
  };
  return d2(h, 0, 0) + d2(0, h, 0) + d2(0, 0, h);
}

/// u* = r^2 cos(theta) sin(pi z / L) and its Laplacian
/// (3 - (pi/L)^2 r^2) cos(theta) sin(pi z / L).
struct Manufactured {
  double L;
  double u(double r, double t, double z) const { return r * r * std::cos(t) * std::sin(std::numbers::pi * z / L); }
  double lap(double r, double t, double z) const {
    const double k = std::numbers::pi / L;
    return (3.0 - k * k * r * r) * std::cos(t) * std::sin(k * z);
  }
  double u_cart(double x, double y, double z) const {
    return std::hypot(x, y) * x * std::sin(std::numbers::pi * z / L);
  }
  double lap_cart(double x, double y, double z) const {
    const double r = std::hypot(x, y);
    return lap(r, std::atan2(y, x), z);
  }
};

/// Columnar swirl v* = (0, V(r), W) in cylindrical components with
///   V(r) = eps * c * r (R - r)^2,  c = 27 / (4 R^3)  (so max V = eps at r = R/3),
/// W = 1. Any such field is a steady Euler solution with radial balance
/// p' = V^2 / r. Its axial vorticity (1/r)(r V)' = 2 eps c (R - r)(R - 2r)
/// vanishes at r = R.
struct ColumnarSwirl {
  double R = 1.0;
  double eps = 0.05;
  double W = 1.0;

  double c() const { return 27.0 / (4.0 * R * R * R); }
  double V(double r) const { return eps * c() * r * (R - r) * (R - r); }
  double dV(double r) const { return eps * c() * ((R - r) * (R - r) - 2.0 * r * (R - r)); }
  double omega_z(double r) const { return 2.0 * eps * c() * (R - r) * (R - 2.0 * r); }
  /// int_0^r V(s)^2 / s ds
  double swirl_head(double r) const {
    const double k = eps * c();
    const double R2 = R * R, R3 = R2 * R, R4 = R3 * R;
    const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r;
    return k * k * (R4 * r2 / 2.0 - 4.0 * R3 * r3 / 3.0 + 1.5 * R2 * r4 - 0.8 * R * r5 + r6 / 6.0);
  }
  /// Pressure normalized to match the base flow v0 = e_z, p0 = -1/2 as eps -> 0.
  double p(double r) const { return swirl_head(r) - 0.5 * W * W; }
  /// Bernoulli perturbation at the inflow: (1/2|v|^2 + p) - (1/2|v0|^2 + p0).
  double g(double r) const { return 0.5 * V(r) * V(r) + 0.5 * W * W + p(r); }
  /// Normal vorticity at the inflow, n = -e_z.
  double h(double r) const { return -omega_z(r); }
  /// d g / d r
  double dg(double r) const { return V(r) * dV(r) + (r > 0.0 ? V(r) * V(r) / r : 0.0); }
};

/// Div-curl pair: f = (0, 0, 2R - 3r) and w = (0, r (R - r), 0) in
/// cylindrical components; curl w = f, div w = 0, w . n = 0 on the boundary.
/// The vector potential is u = (0, 0, R r^2 / 2 - r^3 / 3 - R^3 / 6).
struct ShearPair {
  double R = 1.0;
  double f_z(double r) const { return 2.0 * R - 3.0 * r; }
  double w_theta(double r) const { return r * (R - r); }
  double u_z(double r) const { return R * r * r / 2.0 - r * r * r / 3.0 - R * R * R / 6.0; }
};

/// Helix arclength from z = L back to z = 0 at fixed radius for a columnar
/// field with swirl V and axial speed W.
inline double helix_length(double L, double V, double W) { return L / W * std::sqrt(V * V + W * W); }

}  // namespace oracle
