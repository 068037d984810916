#include "cylflow/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/fourier.hpp"

namespace cylflow {

void lagrange4(double t, double w[4]) {
  const double t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
  w[0] = -t1 * t2 * t3 / 6.0;
  w[1] = t * t2 * t3 / 2.0;
  w[2] = -t * t1 * t3 / 2.0;
  w[3] = t * t1 * t2 / 6.0;
}

Interpolator::Interpolator(const std::vector<const ScalarField*>& comps) {
  if (comps.empty()) throw GridMismatch("Interpolator: no components");
  grid_ = comps.front()->grid();
  n_planes_ = grid_->n_z();
  std::vector<const double*> raw;
  for (const ScalarField* s : comps) {
    require_same_grid(grid_, s->grid(), "Interpolator");
    raw.push_back(s->data());
  }
  build(raw);
}

Interpolator::Interpolator(const std::vector<const CapField*>& comps) {
  if (comps.empty()) throw GridMismatch("Interpolator: no components");
  grid_ = comps.front()->grid();
  n_planes_ = 1;
  std::vector<const double*> raw;
  for (const CapField* s : comps) {
    require_same_grid(grid_, s->grid(), "Interpolator");
    raw.push_back(s->values().data());
  }
  build(raw);
}

void Interpolator::build(const std::vector<const double*>& comps) {
  const CylGrid& g = *grid_;
  const int nt = g.n_theta();
  const int M = nt / 2;
  n_comp_ = static_cast<int>(comps.size());
  coef_.assign(static_cast<std::size_t>(n_planes_) * g.n_r() * n_comp_ * nt, 0.0);
  RingDft dft(nt);
  std::vector<cplx> c(static_cast<std::size_t>(M + 1));
  for (int k = 0; k < n_planes_; ++k) {
    for (int i = 0; i < g.n_r(); ++i) {
      const std::size_t src = static_cast<std::size_t>(nt) * (i + static_cast<std::size_t>(g.n_r()) * k);
      for (int a = 0; a < n_comp_; ++a) {
        dft.forward(comps[static_cast<std::size_t>(a)] + src, c.data());
        double* dst = coef_.data() +
                      ((static_cast<std::size_t>(k) * g.n_r() + i) * n_comp_ + a) * nt;
        dst[0] = c[0].real();
        for (int m = 1; m < M; ++m) {
          dst[m] = 2.0 * c[static_cast<std::size_t>(m)].real();
          dst[M + m] = -2.0 * c[static_cast<std::size_t>(m)].imag();
        }
        dst[M] = c[static_cast<std::size_t>(M)].real();
      }
    }
  }
}

void Interpolator::accumulate(int i, int k, double w, double* acc) const {
  const int nt = grid_->n_theta();
  const std::size_t block = static_cast<std::size_t>(n_comp_) * nt;
  const double* src = coef_.data() + (static_cast<std::size_t>(k) * grid_->n_r() + i) * block;
  for (std::size_t q = 0; q < block; ++q) acc[q] += w * src[q];
}

void Interpolator::eval(const Point& p, double* out) const {
  eval_cyl(std::hypot(p.x, p.y), std::atan2(p.y, p.x), p.z, out);
}

double Interpolator::eval1(const Point& p) const {
  double v = 0.0;
  eval(p, &v);
  return v;
}

void Interpolator::eval_cyl(double r, double theta, double z, double* out) const {
  const CylGrid& g = *grid_;
  const double R = g.radius(), L = g.length();
  if (!(r <= R * (1.0 + 1e-9)) || !(r >= 0.0)) {
    std::ostringstream os;
    os << "interpolation point outside the cylinder: r = " << r << " (R = " << R << ")";
    throw OutOfDomain(os.str());
  }
  r = std::min(r, R);

  // radial stencil: base .. base+3, base may be -1 (reflected ring 1)
  const int nr = g.n_r();
  const double s = r / g.dr();
  int i0 = std::min(static_cast<int>(std::floor(s)), nr - 2);
  int rbase = std::min(i0 - 1, nr - 4);
  double wr[4];
  lagrange4(s - rbase, wr);

  int zbase = 0;
  double wz[4] = {1.0, 0.0, 0.0, 0.0};
  int nzs = 1;
  if (n_planes_ > 1) {
    if (!(z >= -1e-9 * L && z <= L * (1.0 + 1e-9))) {
      std::ostringstream os;
      os << "interpolation point outside the cylinder: z = " << z << " (L = " << L << ")";
      throw OutOfDomain(os.str());
    }
    z = std::clamp(z, 0.0, L);
    const int nz = g.n_z();
    const double sz = z / g.dz();
    const int k0 = std::min(static_cast<int>(std::floor(sz)), nz - 2);
    zbase = std::clamp(k0 - 1, 0, nz - 4);
    lagrange4(sz - zbase, wz);
    nzs = 4;
  }

  const int nt = g.n_theta();
  const int M = nt / 2;
  const std::size_t block = static_cast<std::size_t>(n_comp_) * nt;
  thread_local std::vector<double> acc, accr, basis, basisr;
  acc.assign(block, 0.0);
  accr.assign(block, 0.0);
  bool reflected = false;
  for (int a = 0; a < nzs; ++a) {
    if (wz[a] == 0.0) continue;
    for (int b = 0; b < 4; ++b) {
      const double w = wz[a] * wr[b];
      if (w == 0.0) continue;
      const int i = rbase + b;
      if (i < 0) {
        accumulate(-i, zbase + a, w, accr.data());
        reflected = true;
      } else {
        accumulate(i, zbase + a, w, acc.data());
      }
    }
  }

  basis.assign(static_cast<std::size_t>(nt), 0.0);
  basisr.assign(static_cast<std::size_t>(nt), 0.0);
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double cm = 1.0, sm = 0.0;
  basis[0] = 1.0;
  basisr[0] = 1.0;
  for (int m = 1; m <= M; ++m) {
    const double cn = cm * c1 - sm * s1;
    const double sn = sm * c1 + cm * s1;
    cm = cn;
    sm = sn;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    basis[static_cast<std::size_t>(m)] = cm;
    basisr[static_cast<std::size_t>(m)] = sign * cm;
    if (m < M) {
      basis[static_cast<std::size_t>(M + m)] = sm;
      basisr[static_cast<std::size_t>(M + m)] = sign * sm;
    }
  }

  for (int c = 0; c < n_comp_; ++c) {
    const double* ac = acc.data() + static_cast<std::size_t>(c) * nt;
    double v = 0.0;
    for (int q = 0; q < nt; ++q) v += ac[q] * basis[static_cast<std::size_t>(q)];
    if (reflected) {
      const double* ar = accr.data() + static_cast<std::size_t>(c) * nt;
      for (int q = 0; q < nt; ++q) v += ar[q] * basisr[static_cast<std::size_t>(q)];
    }
    out[c] = v;
  }
}

double interpolate(const ScalarField& s, const Point& p) {
  Interpolator ip({&s});
  return ip.eval1(p);
}

Vec3 interpolate(const VectorField& f, const Point& p) {
  const VectorField fc = to_cartesian(f);
  Interpolator ip({&fc.comp(0), &fc.comp(1), &fc.comp(2)});
  Vec3 out{};
  ip.eval(p, out.data());
  return out;
}

}  // namespace cylflow
