#include "cylflow/fourier.hpp"

#include <cmath>
#include <numbers>

namespace cylflow {

RingDft::RingDft(int n) : n_(n) {
  const int nm = n_modes();
  cos_.resize(static_cast<std::size_t>(nm) * n);
  sin_.resize(cos_.size());
  for (int m = 0; m < nm; ++m) {
    for (int j = 0; j < n; ++j) {
      // reduce the angle index first so large m*j stays exact
      const int q = (m * j) % n;
      const double a = 2.0 * std::numbers::pi * q / n;
      cos_[static_cast<std::size_t>(m * n + j)] = std::cos(a);
      sin_[static_cast<std::size_t>(m * n + j)] = std::sin(a);
    }
  }
}

void RingDft::forward(const double* ring, cplx* coeffs) const {
  const int nm = n_modes();
  const double inv = 1.0 / n_;
  for (int m = 0; m < nm; ++m) {
    const double* c = cos_.data() + static_cast<std::size_t>(m) * n_;
    const double* s = sin_.data() + static_cast<std::size_t>(m) * n_;
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n_; ++j) {
      re += ring[j] * c[j];
      im -= ring[j] * s[j];
    }
    coeffs[m] = cplx(re * inv, im * inv);
  }
  coeffs[nm - 1] = cplx(coeffs[nm - 1].real(), 0.0);
}

void RingDft::inverse(const cplx* coeffs, double* ring) const {
  const int nm = n_modes();
  for (int j = 0; j < n_; ++j) ring[j] = coeffs[0].real();
  for (int m = 1; m < nm; ++m) {
    const double w = (m == nm - 1) ? 1.0 : 2.0;
    const double re = w * coeffs[m].real();
    const double im = w * coeffs[m].imag();
    const double* c = cos_.data() + static_cast<std::size_t>(m) * n_;
    const double* s = sin_.data() + static_cast<std::size_t>(m) * n_;
    for (int j = 0; j < n_; ++j) ring[j] += re * c[j] - im * s[j];
  }
}

ModeField::ModeField(GridPtr grid)
    : grid_(std::move(grid)),
      n_modes_(grid_->n_modes()),
      plane_(static_cast<std::size_t>(grid_->n_r()) * grid_->n_z()),
      c_(plane_ * static_cast<std::size_t>(n_modes_)) {}

ModeField to_modes(const ScalarField& s) {
  const CylGrid& g = *s.grid();
  ModeField out(s.grid());
  RingDft dft(g.n_theta());
  std::vector<cplx> buf(static_cast<std::size_t>(g.n_modes()));
  for (int k = 0; k < g.n_z(); ++k) {
    for (int i = 0; i < g.n_r(); ++i) {
      dft.forward(s.data() + g.ring_offset(i, k), buf.data());
      for (int m = 0; m < g.n_modes(); ++m) out(m, i, k) = buf[static_cast<std::size_t>(m)];
    }
  }
  return out;
}

ScalarField from_modes(const ModeField& mf) {
  const CylGrid& g = *mf.grid();
  ScalarField out(mf.grid());
  RingDft dft(g.n_theta());
  std::vector<cplx> buf(static_cast<std::size_t>(g.n_modes()));
  for (int k = 0; k < g.n_z(); ++k) {
    for (int i = 0; i < g.n_r(); ++i) {
      for (int m = 0; m < g.n_modes(); ++m) buf[static_cast<std::size_t>(m)] = mf(m, i, k);
      dft.inverse(buf.data(), out.values().data() + g.ring_offset(i, k));
    }
  }
  return out;
}

}  // namespace cylflow
