#include "cylflow/operators.hpp"

#include "cylflow/error.hpp"
#include "cylflow/fourier.hpp"
#include "cylflow/stencil.hpp"

namespace cylflow {

using detail::Taps;

namespace {

const cplx I1(0.0, 1.0);

struct ModeOps {
  const CylGrid& g;

  cplx dr(const cplx* p, int i, int k, int parity) const {
    Taps t;
    detail::add_dr(t, g, i, k, parity, 1.0);
    return t.apply(p, g.n_r());
  }
  cplx dz(const cplx* p, int i, int k) const {
    Taps t;
    detail::add_dz(t, g, i, k, 1.0);
    return t.apply(p, g.n_r());
  }
  // Limit of q / r on the axis, i.e. dq/dr there, for a mode q that vanishes
  // on the axis. One-sided rather than mirrored so that profiles with an
  // even r^2 part (not smooth across the axis) are still differentiated
  // to second order.
  cplx over_r_axis(const cplx* p, int k) const {
    const int n = g.n_r() * k;
    return (4.0 * p[1 + n] - p[2 + n] - 3.0 * p[n]) / (2.0 * g.dr());
  }
};

inline std::size_t at(const CylGrid& g, int i, int k) {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(g.n_r()) * k;
}

}  // namespace

VectorField grad(const ScalarField& s) {
  const CylGrid& g = *s.grid();
  const ModeField S = to_modes(s);
  ModeField Gr(s.grid()), Gt(s.grid()), Gz(s.grid());
  ModeOps op{g};
  for (int m = 0; m < g.n_modes(); ++m) {
    const double mt = dtheta_factor(m, g.n_theta());
    const int par = detail::scalar_parity(m);
    const cplx* p = S.mode(m);
    cplx* gr = Gr.mode(m);
    cplx* gt = Gt.mode(m);
    cplx* gz = Gz.mode(m);
    for (int k = 0; k < g.n_z(); ++k) {
      for (int i = 1; i < g.n_r(); ++i) {
        gr[at(g, i, k)] = op.dr(p, i, k, par);
        gt[at(g, i, k)] = I1 * mt * p[at(g, i, k)] / g.r(i);
        gz[at(g, i, k)] = op.dz(p, i, k);
      }
      if (m == 0) gz[at(g, 0, k)] = op.dz(p, 0, k);
      if (m == 1) {
        gr[at(g, 0, k)] = op.over_r_axis(p, k);
        gt[at(g, 0, k)] = I1 * mt * op.over_r_axis(p, k);
      }
    }
  }
  return VectorField(from_modes(Gr), from_modes(Gt), from_modes(Gz), Frame::Cylindrical);
}

ScalarField div(const VectorField& f_in) {
  const VectorField f = to_cylindrical(f_in);
  const CylGrid& g = *f.grid();
  const ModeField Fr = to_modes(f.comp(0)), Ft = to_modes(f.comp(1)), Fz = to_modes(f.comp(2));
  ModeField D(f.grid());
  ModeOps op{g};
  for (int m = 0; m < g.n_modes(); ++m) {
    const double mt = dtheta_factor(m, g.n_theta());
    const int tpar = detail::transverse_parity(m);
    const cplx* fr = Fr.mode(m);
    const cplx* ft = Ft.mode(m);
    const cplx* fz = Fz.mode(m);
    cplx* d = D.mode(m);
    for (int k = 0; k < g.n_z(); ++k) {
      for (int i = 1; i < g.n_r(); ++i) {
        const double r = g.r(i);
        d[at(g, i, k)] = op.dr(fr, i, k, tpar) + fr[at(g, i, k)] / r +
                         I1 * mt * ft[at(g, i, k)] / r + op.dz(fz, i, k);
      }
      if (m == 0) d[at(g, 0, k)] = 2.0 * op.over_r_axis(fr, k) + op.dz(fz, 0, k);
    }
  }
  return from_modes(D);
}

VectorField curl(const VectorField& f_in) {
  const VectorField f = to_cylindrical(f_in);
  const CylGrid& g = *f.grid();
  const ModeField Fr = to_modes(f.comp(0)), Ft = to_modes(f.comp(1)), Fz = to_modes(f.comp(2));
  ModeField Cr(f.grid()), Ct(f.grid()), Cz(f.grid());
  ModeOps op{g};
  for (int m = 0; m < g.n_modes(); ++m) {
    const double mt = dtheta_factor(m, g.n_theta());
    const int spar = detail::scalar_parity(m);
    const int tpar = detail::transverse_parity(m);
    const cplx* fr = Fr.mode(m);
    const cplx* ft = Ft.mode(m);
    const cplx* fz = Fz.mode(m);
    cplx* cr = Cr.mode(m);
    cplx* ct = Ct.mode(m);
    cplx* cz = Cz.mode(m);
    for (int k = 0; k < g.n_z(); ++k) {
      for (int i = 1; i < g.n_r(); ++i) {
        const double r = g.r(i);
        const std::size_t n = at(g, i, k);
        cr[n] = I1 * mt * fz[n] / r - op.dz(ft, i, k);
        ct[n] = op.dz(fr, i, k) - op.dr(fz, i, k, spar);
        cz[n] = op.dr(ft, i, k, tpar) + ft[n] / r - I1 * mt * fr[n] / r;
      }
      const std::size_t n0 = at(g, 0, k);
      if (m == 0) cz[n0] = 2.0 * op.over_r_axis(ft, k);
      if (m == 1) {
        cr[n0] = I1 * mt * op.over_r_axis(fz, k) - op.dz(ft, 0, k);
        ct[n0] = op.dz(fr, 0, k) - op.over_r_axis(fz, k);
      }
    }
  }
  return VectorField(from_modes(Cr), from_modes(Ct), from_modes(Cz), Frame::Cylindrical);
}

ScalarField laplacian(const ScalarField& s) {
  const CylGrid& g = *s.grid();
  const ModeField S = to_modes(s);
  ModeField L(s.grid());
  for (int m = 0; m < g.n_modes(); ++m) {
    const double m2 = double(m) * m;
    const cplx* p = S.mode(m);
    cplx* l = L.mode(m);
    for (int k = 0; k < g.n_z(); ++k) {
      for (int i = (m == 0 ? 0 : 1); i < g.n_r(); ++i) {
        Taps t;
        detail::add_laplacian(t, g, i, k, m2, 1.0);
        l[at(g, i, k)] = t.apply(p, g.n_r());
      }
    }
  }
  return from_modes(L);
}

TensorField cartesian_gradient(const VectorField& v) {
  const VectorField vc = to_cartesian(v);
  TensorField J;
  for (int a = 0; a < 3; ++a) {
    const VectorField ga = to_cartesian(grad(vc.comp(a)));
    for (int b = 0; b < 3; ++b) J.c[static_cast<std::size_t>(3 * a + b)] = ga.comp(b);
  }
  return J;
}

VectorField advect(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid(), "advect");
  const VectorField ac = to_cartesian(a);
  const TensorField J = cartesian_gradient(b);
  VectorField out(a.grid(), Frame::Cartesian);
  for (std::size_t n = 0; n < out.size(); ++n) {
    for (int p = 0; p < 3; ++p) {
      double s = 0.0;
      for (int q = 0; q < 3; ++q) s += J.c[static_cast<std::size_t>(3 * p + q)][n] * ac.comp(q)[n];
      out.comp(p)[n] = s;
    }
  }
  return out;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_layout(a, b, "dot");
  ScalarField out(a.grid());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = a.comp(0)[n] * b.comp(0)[n] + a.comp(1)[n] * b.comp(1)[n] + a.comp(2)[n] * b.comp(2)[n];
  }
  return out;
}

void project_axis(ScalarField& s) {
  const CylGrid& g = *s.grid();
  for (int k = 0; k < g.n_z(); ++k) {
    const std::size_t off = g.ring_offset(0, k);
    double mean = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) mean += s[off + j];
    mean /= g.n_theta();
    for (int j = 0; j < g.n_theta(); ++j) s[off + j] = mean;
  }
}

}  // namespace cylflow
