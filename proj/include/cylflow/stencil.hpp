#pragma once

// Finite-difference stencils in the (r, z) plane of a single azimuthal mode.
// Shared by the physical-space operators and the per-mode matrix assembly in
// the Poisson and div-curl solvers, so both see exactly the same discretization.

#include <array>
#include <cassert>
#include <complex>

#include "cylflow/grid.hpp"

namespace cylflow::detail {

struct Tap {
  int i;
  int k;
  double w;
};

struct Taps {
  std::array<Tap, 32> t;
  int n = 0;

  void add(int i, int k, double w) {
    for (int q = 0; q < n; ++q) {
      if (t[q].i == i && t[q].k == k) {
        t[q].w += w;
        return;
      }
    }
    assert(n < static_cast<int>(t.size()));
    t[static_cast<std::size_t>(n++)] = {i, k, w};
  }
  void clear() { n = 0; }

  template <class T>
  T apply(const T* plane, int n_r) const {
    T s{};
    for (int q = 0; q < n; ++q) s += t[q].w * plane[t[q].i + n_r * t[q].k];
    return s;
  }
};

/// Parity of a mode under r -> -r (reflection through the axis): +1 even, -1 odd.
inline int scalar_parity(int m) { return (m % 2 == 0) ? 1 : -1; }
/// Parity of the r and theta cylindrical components of a smooth vector field.
inline int transverse_parity(int m) { return -scalar_parity(m); }

/// d/dr. Centered in the interior, mirror image at the axis, one-sided at r = R.
inline void add_dr(Taps& s, const CylGrid& g, int i, int k, int parity, double scale) {
  const double h = g.dr();
  const int last = g.n_r() - 1;
  if (i == 0) {
    s.add(1, k, scale * (1.0 - parity) / (2.0 * h));
  } else if (i == last) {
    s.add(i, k, scale * 3.0 / (2.0 * h));
    s.add(i - 1, k, scale * -4.0 / (2.0 * h));
    s.add(i - 2, k, scale * 1.0 / (2.0 * h));
  } else {
    s.add(i + 1, k, scale / (2.0 * h));
    s.add(i - 1, k, -scale / (2.0 * h));
  }
}

inline void add_drr(Taps& s, const CylGrid& g, int i, int k, int parity, double scale) {
  const double h2 = g.dr() * g.dr();
  const int last = g.n_r() - 1;
  if (i == 0) {
    s.add(1, k, scale * (1.0 + parity) / h2);
    s.add(0, k, scale * -2.0 / h2);
  } else if (i == last) {
    s.add(i, k, scale * 2.0 / h2);
    s.add(i - 1, k, scale * -5.0 / h2);
    s.add(i - 2, k, scale * 4.0 / h2);
    s.add(i - 3, k, scale * -1.0 / h2);
  } else {
    s.add(i + 1, k, scale / h2);
    s.add(i, k, scale * -2.0 / h2);
    s.add(i - 1, k, scale / h2);
  }
}

/// d/dz. Centered in the interior, one-sided second order on the caps.
inline void add_dz(Taps& s, const CylGrid& g, int i, int k, double scale) {
  const double h = g.dz();
  const int last = g.n_z() - 1;
  if (k == 0) {
    s.add(i, 0, scale * -3.0 / (2.0 * h));
    s.add(i, 1, scale * 4.0 / (2.0 * h));
    s.add(i, 2, scale * -1.0 / (2.0 * h));
  } else if (k == last) {
    s.add(i, k, scale * 3.0 / (2.0 * h));
    s.add(i, k - 1, scale * -4.0 / (2.0 * h));
    s.add(i, k - 2, scale * 1.0 / (2.0 * h));
  } else {
    s.add(i, k + 1, scale / (2.0 * h));
    s.add(i, k - 1, -scale / (2.0 * h));
  }
}

inline void add_dzz(Taps& s, const CylGrid& g, int i, int k, double scale) {
  const double h2 = g.dz() * g.dz();
  const int last = g.n_z() - 1;
  if (k == 0) {
    s.add(i, 0, scale * 2.0 / h2);
    s.add(i, 1, scale * -5.0 / h2);
    s.add(i, 2, scale * 4.0 / h2);
    s.add(i, 3, scale * -1.0 / h2);
  } else if (k == last) {
    s.add(i, k, scale * 2.0 / h2);
    s.add(i, k - 1, scale * -5.0 / h2);
    s.add(i, k - 2, scale * 4.0 / h2);
    s.add(i, k - 3, scale * -1.0 / h2);
  } else {
    s.add(i, k + 1, scale / h2);
    s.add(i, k, scale * -2.0 / h2);
    s.add(i, k - 1, scale / h2);
  }
}

/// Radial part of the mode-m scalar Laplacian, g_rr + g_r/r - m2 g/r^2, at
/// i >= 1. On the axis only m = 0 survives, and there the radial part of the
/// Laplacian is 2 g_rr = 4 (g_1 - g_0) / dr^2.
inline void add_radial_laplacian(Taps& s, const CylGrid& g, int i, int k, double m2,
                                 double scale) {
  if (i == 0) {
    const double h2 = g.dr() * g.dr();
    s.add(1, k, scale * 4.0 / h2);
    s.add(0, k, scale * -4.0 / h2);
    return;
  }
  const double r = g.r(i);
  add_drr(s, g, i, k, 1, scale);
  add_dr(s, g, i, k, 1, scale / r);
  if (m2 != 0.0) s.add(i, k, -scale * m2 / (r * r));
}

inline void add_laplacian(Taps& s, const CylGrid& g, int i, int k, double m2, double scale) {
  add_radial_laplacian(s, g, i, k, m2, scale);
  add_dzz(s, g, i, k, scale);
}

}  // namespace cylflow::detail
