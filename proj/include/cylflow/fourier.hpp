#pragma once

#include <complex>
#include <vector>

#include "cylflow/field.hpp"

namespace cylflow {

using cplx = std::complex<double>;

/// Real discrete Fourier transform of one azimuthal ring of n (even) samples.
///
///   c_m = (1/n) sum_j s_j exp(-i m theta_j),  m = 0 .. n/2
///   s_j = c_0 + 2 sum_{0<m<n/2} Re(c_m exp(i m theta_j)) + Re(c_{n/2} exp(i n/2 theta_j))
///
/// Rings are short (a few dozen samples), so a table-driven O(n^2)
/// transform is used; it is deterministic and allocation-free per call.
class RingDft {
 public:
  explicit RingDft(int n);

  int n() const { return n_; }
  int n_modes() const { return n_ / 2 + 1; }

  void forward(const double* ring, cplx* coeffs) const;
  void inverse(const cplx* coeffs, double* ring) const;

 private:
  int n_;
  std::vector<double> cos_;  // cos_[m * n + j]
  std::vector<double> sin_;
};

/// Azimuthal Fourier coefficients of a scalar field: one complex value per
/// (mode m, radial i, axial k). Layout m * (n_r * n_z) + i + n_r * k.
class ModeField {
 public:
  ModeField() = default;
  explicit ModeField(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  int n_modes() const { return n_modes_; }
  std::size_t plane_size() const { return plane_; }

  cplx& operator()(int m, int i, int k) { return c_[slot(m, i, k)]; }
  cplx operator()(int m, int i, int k) const { return c_[slot(m, i, k)]; }
  cplx* mode(int m) { return c_.data() + static_cast<std::size_t>(m) * plane_; }
  const cplx* mode(int m) const { return c_.data() + static_cast<std::size_t>(m) * plane_; }

 private:
  std::size_t slot(int m, int i, int k) const {
    return static_cast<std::size_t>(m) * plane_ + static_cast<std::size_t>(i) +
           static_cast<std::size_t>(grid_->n_r()) * static_cast<std::size_t>(k);
  }

  GridPtr grid_;
  int n_modes_ = 0;
  std::size_t plane_ = 0;
  std::vector<cplx> c_;
};

ModeField to_modes(const ScalarField& s);
ScalarField from_modes(const ModeField& m);

/// Derivative factor for d/dtheta of mode m on a ring of n points. The
/// Nyquist mode has no odd part on the grid, so its derivative is zero.
inline double dtheta_factor(int m, int n_theta) { return (2 * m == n_theta) ? 0.0 : double(m); }

}  // namespace cylflow
