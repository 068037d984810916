#include "cylflow/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/fourier.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "cylflow/stencil.hpp"
#include "sparse_mode.hpp"

namespace cylflow::poisson {

using detail::SparseSystem;
using detail::Taps;

BcSpec BcSpec::all_dirichlet(const ScalarField& data) {
  BcSpec bc;
  bc.inflow.data = data;
  bc.outflow.data = data;
  bc.mantle.data = data;
  return bc;
}

namespace {

enum class Face { Inflow, Outflow, Mantle };

const FaceBc& face_of(const BcSpec& bc, Face f) {
  switch (f) {
    case Face::Inflow: return bc.inflow;
    case Face::Outflow: return bc.outflow;
    case Face::Mantle: return bc.mantle;
  }
  return bc.mantle;
}

// Taps of the face condition operator at node (i, k).
void add_face_operator(Taps& t, const CylGrid& g, const FaceBc& fb, Face f, int i, int k) {
  if (fb.kind == BcKind::Dirichlet) {
    t.add(i, k, 1.0);
    return;
  }
  switch (f) {
    case Face::Inflow: detail::add_dz(t, g, i, k, -1.0); break;
    case Face::Outflow: detail::add_dz(t, g, i, k, 1.0); break;
    case Face::Mantle: detail::add_dr(t, g, i, k, 1, 1.0); break;
  }
  if (fb.kind == BcKind::Robin && fb.alpha != 0.0) t.add(i, k, fb.alpha);
}

// How the row of node (i, k) is built.
struct RowRule {
  enum Kind { Pde, Face1, EdgeAvg, EdgeSum } kind = Pde;
  Face a = Face::Inflow;
  Face b = Face::Mantle;
};

RowRule row_rule(const CylGrid& g, const BcSpec& bc, int i, int k) {
  RowRule rr;
  const BoundaryTag tag = g.tag(i, k);
  switch (tag) {
    case BoundaryTag::Interior: rr.kind = RowRule::Pde; break;
    case BoundaryTag::Inflow: rr = {RowRule::Face1, Face::Inflow, Face::Inflow}; break;
    case BoundaryTag::Outflow: rr = {RowRule::Face1, Face::Outflow, Face::Outflow}; break;
    case BoundaryTag::Mantle: rr = {RowRule::Face1, Face::Mantle, Face::Mantle}; break;
    case BoundaryTag::EdgeMinus:
    case BoundaryTag::EdgePlus: {
      const Face cap = (tag == BoundaryTag::EdgeMinus) ? Face::Inflow : Face::Outflow;
      const bool dc = face_of(bc, cap).dirichlet();
      const bool dm = bc.mantle.dirichlet();
      if (dc && dm) rr = {RowRule::EdgeAvg, cap, Face::Mantle};
      else if (dc) rr = {RowRule::Face1, cap, cap};
      else if (dm) rr = {RowRule::Face1, Face::Mantle, Face::Mantle};
      else rr = {RowRule::EdgeSum, cap, Face::Mantle};
      break;
    }
  }
  return rr;
}

}  // namespace

struct Solver::Impl {
  GridPtr grid;
  BcSpec layout;  // kinds only; data ignored
  bool bordered = false;
  std::vector<SparseSystem> modes;
};

Solver::Solver(GridPtr grid, const BcSpec& bc) : impl_(std::make_unique<Impl>()) {
  impl_->grid = grid;
  impl_->layout.inflow.kind = bc.inflow.kind;
  impl_->layout.inflow.alpha = bc.inflow.alpha;
  impl_->layout.outflow.kind = bc.outflow.kind;
  impl_->layout.outflow.alpha = bc.outflow.alpha;
  impl_->layout.mantle.kind = bc.mantle.kind;
  impl_->layout.mantle.alpha = bc.mantle.alpha;
  impl_->layout.gauge_fixed_neumann = bc.gauge_fixed_neumann;
  if (bc.all_neumann()) {
    if (!bc.gauge_fixed_neumann)
      throw ValidationError(
          "poisson: no face fixes the solution level; request the gauge-fixed all-Neumann solve explicitly");
    impl_->bordered = true;
  }

  const CylGrid& g = *grid;
  const int nr = g.n_r(), nz = g.n_z();
  const int n = nr * nz;
  impl_->modes.resize(static_cast<std::size_t>(g.n_modes()));
  for (int m = 0; m < g.n_modes(); ++m) {
    const bool border = impl_->bordered && m == 0;
    std::vector<SparseSystem::Triplet> trip;
    trip.reserve(static_cast<std::size_t>(n) * 12);
    const double m2 = double(m) * m;
    for (int k = 0; k < nz; ++k) {
      for (int i = 0; i < nr; ++i) {
        const int row = i + nr * k;
        Taps t;
        int n_bc_ops = 0;
        if (m != 0 && i == 0) {
          t.add(0, k, 1.0);
        } else {
          const RowRule rr = row_rule(g, impl_->layout, i, k);
          switch (rr.kind) {
            case RowRule::Pde: detail::add_laplacian(t, g, i, k, m2, 1.0); break;
            case RowRule::Face1:
              add_face_operator(t, g, face_of(impl_->layout, rr.a), rr.a, i, k);
              n_bc_ops = 1;
              break;
            case RowRule::EdgeAvg: t.add(i, k, 1.0); break;
            case RowRule::EdgeSum:
              add_face_operator(t, g, face_of(impl_->layout, rr.a), rr.a, i, k);
              add_face_operator(t, g, face_of(impl_->layout, rr.b), rr.b, i, k);
              n_bc_ops = 2;
              break;
          }
        }
        for (int q = 0; q < t.n; ++q) trip.emplace_back(row, t.t[q].i + nr * t.t[q].k, t.t[q].w);
        if (border && n_bc_ops > 0) trip.emplace_back(row, n, double(n_bc_ops));
      }
    }
    int size = n;
    if (border) {
      for (int k = 0; k < nz; ++k)
        for (int i = 0; i < nr; ++i) {
          const double w = g.radial_weight(i) * g.axial_weight(k);
          if (w != 0.0) trip.emplace_back(n, i + nr * k, w);
        }
      size = n + 1;
    }
    std::ostringstream what;
    what << "poisson mode " << m;
    impl_->modes[static_cast<std::size_t>(m)].factorize(size, trip, what.str());
  }
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

const GridPtr& Solver::grid() const { return impl_->grid; }

double neumann_imbalance(const ScalarField& rhs, const BcSpec& bc, double* scale) {
  const CylGrid& g = *rhs.grid();
  double flux = 0.0, mag = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const double w = g.cap_area_weight(i);
      const double a = bc.inflow.value(g.index(i, j, 0));
      const double b = bc.outflow.value(g.index(i, j, g.n_z() - 1));
      flux += w * (a + b);
      mag += w * (std::abs(a) + std::abs(b));
    }
  }
  for (int k = 0; k < g.n_z(); ++k) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const double w = g.mantle_area_weight(k);
      const double a = bc.mantle.value(g.index(g.n_r() - 1, j, k));
      flux += w * a;
      mag += w * std::abs(a);
    }
  }
  ScalarField abs_rhs = rhs;
  for (double& x : abs_rhs.values()) x = std::abs(x);
  if (scale) *scale = mag + integrate(abs_rhs);
  return integrate(rhs) - flux;
}

double Solver::interior_residual(const ScalarField& u, const ScalarField& rhs) {
  ScalarField res = laplacian(u) - rhs;
  const CylGrid& g = *u.grid();
  for (std::size_t n = 0; n < res.size(); ++n) {
    if (g.tag(n) != BoundaryTag::Interior) res[n] = 0.0;
  }
  return norm(res, NormKind::L2);
}

ScalarField Solver::solve(const ScalarField& rhs, const BcSpec& bc) const {
  const CylGrid& g = *impl_->grid;
  require_same_grid(impl_->grid, rhs.grid(), "poisson::solve");
  for (const FaceBc* f : {&bc.inflow, &bc.outflow, &bc.mantle}) {
    if (f->data.size()) require_same_grid(impl_->grid, f->data.grid(), "poisson::solve");
  }
  if (!rhs.all_finite()) throw ValidationError("poisson::solve: non-finite right-hand side");

  if (impl_->bordered) {
    double scale = 0.0;
    const double imb = neumann_imbalance(rhs, bc, &scale);
    if (std::abs(imb) > 1e-8 * scale) {
      std::ostringstream os;
      os << "poisson::solve: all-Neumann data violate the flux balance (int rhs dV - int data dS = " << imb
         << ", scale " << scale << ")";
      throw IncompatibleData(os.str());
    }
  }

  const ModeField R = to_modes(rhs);
  const ScalarField zero(impl_->grid);
  const ModeField Di = to_modes(bc.inflow.data.size() ? bc.inflow.data : zero);
  const ModeField Do = to_modes(bc.outflow.data.size() ? bc.outflow.data : zero);
  const ModeField Dm = to_modes(bc.mantle.data.size() ? bc.mantle.data : zero);
  auto face_data = [&](Face f, int m, int i, int k) -> cplx {
    switch (f) {
      case Face::Inflow: return Di(m, i, k);
      case Face::Outflow: return Do(m, i, k);
      case Face::Mantle: return Dm(m, i, k);
    }
    return 0.0;
  };

  const int nr = g.n_r(), nz = g.n_z(), n = nr * nz;
  ModeField U(impl_->grid);
  for (int m = 0; m < g.n_modes(); ++m) {
    const bool border = impl_->bordered && m == 0;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(border ? n + 1 : n, 2);
    for (int k = 0; k < nz; ++k) {
      for (int i = 0; i < nr; ++i) {
        const int row = i + nr * k;
        cplx v = 0.0;
        if (!(m != 0 && i == 0)) {
          const RowRule rr = row_rule(g, impl_->layout, i, k);
          switch (rr.kind) {
            case RowRule::Pde: v = R(m, i, k); break;
            case RowRule::Face1: v = face_data(rr.a, m, i, k); break;
            case RowRule::EdgeAvg: v = 0.5 * (face_data(rr.a, m, i, k) + face_data(rr.b, m, i, k)); break;
            case RowRule::EdgeSum: v = face_data(rr.a, m, i, k) + face_data(rr.b, m, i, k); break;
          }
        }
        b(row, 0) = v.real();
        b(row, 1) = v.imag();
      }
    }
    const Eigen::MatrixXd x = impl_->modes[static_cast<std::size_t>(m)].solve(b, "poisson::solve");
    cplx* u = U.mode(m);
    for (int q = 0; q < n; ++q) u[q] = cplx(x(q, 0), x(q, 1));
  }
  ScalarField out = from_modes(U);

  const double res = interior_residual(out, rhs);
  const double bound = 1e-10 * (1.0 + norm(rhs, NormKind::L2));
  if (!(res <= bound)) {
    std::ostringstream os;
    os << "poisson::solve: interior residual " << res << " exceeds " << bound;
    throw SolverFailure(os.str());
  }
  return out;
}

ScalarField solve(const ScalarField& rhs, const BcSpec& bc) {
  Solver s(rhs.grid(), bc);
  return s.solve(rhs, bc);
}

// ------------------------------------------------------------ compatibility

namespace {

struct Derivative {
  double value;
  double truncation;  // |h^2/3 * third difference|, the leading stencil error
};

// One-sided first derivative at samples f0 (boundary), f1, f2, f3 spaced h
// apart, pointing away from the boundary, and an estimate of its error.
Derivative one_sided(double f0, double f1, double f2, double f3, double h) {
  const double d = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
  const double third = (f3 - 3.0 * f2 + 3.0 * f1 - f0) / (h * h * h);
  return {d, std::abs(h * h / 3.0 * third)};
}

void check_edge(EdgeCompat& e, const CylGrid& g, const ScalarField& rhs, const FaceBc& cap, bool plus,
                const FaceBc& mantle, int level, double scale, double tol) {
  const int kc = plus ? g.n_z() - 1 : 0;
  const int kdir = plus ? -1 : 1;  // from the cap into the domain
  const int ir = g.n_r() - 1;
  e.dirichlet_faces = int(cap.dirichlet()) + int(mantle.dirichlet());
  const int K = e.dirichlet_faces;

  // B_mantle applied to cap data (derivative along r inside the cap) and
  // B_cap applied to mantle data (derivative along z inside the mantle).
  auto mantle_op_on_cap = [&](int j) {
    auto at = [&](int i) { return cap.value(g.index(i, j, kc)); };
    // outward radial derivative at r = R: minus the inward one-sided derivative
    Derivative d = one_sided(at(ir), at(ir - 1), at(ir - 2), at(ir - 3), g.dr());
    d.value = -d.value;
    if (mantle.kind == BcKind::Robin) d.value += mantle.alpha * at(ir);
    return d;
  };
  auto cap_op_on_mantle = [&](int j) {
    auto at = [&](int s) { return mantle.value(g.index(ir, j, kc + kdir * s)); };
    Derivative d = one_sided(at(0), at(1), at(2), at(3), g.dz());
    // inward derivative along +kdir; outward normal derivative is its negative
    d.value = -d.value;
    if (cap.kind == BcKind::Robin) d.value += cap.alpha * at(0);
    return d;
  };

  double viol = 0.0, allow = 0.0;
  if (K == 2) {
    e.data_checked = true;  // m + 2 >= 1 for every level
    for (int j = 0; j < g.n_theta(); ++j) {
      const std::size_t idx = g.index(ir, j, kc);
      viol = std::max(viol, std::abs(cap.value(idx) - mantle.value(idx)));
    }
  } else if (K == 1 && level >= 0) {
    e.data_checked = true;
    for (int j = 0; j < g.n_theta(); ++j) {
      const std::size_t idx = g.index(ir, j, kc);
      if (cap.dirichlet()) {
        const Derivative d = mantle_op_on_cap(j);
        viol = std::max(viol, std::abs(d.value - mantle.value(idx)));
        allow = std::max(allow, 2.0 * d.truncation);
      } else {
        const Derivative d = cap_op_on_mantle(j);
        viol = std::max(viol, std::abs(d.value - cap.value(idx)));
        allow = std::max(allow, 2.0 * d.truncation);
      }
    }
  } else if (K == 0 && level >= 1) {
    e.data_checked = true;
    for (int j = 0; j < g.n_theta(); ++j) {
      const Derivative a = mantle_op_on_cap(j);
      const Derivative b = cap_op_on_mantle(j);
      viol = std::max(viol, std::abs(a.value - b.value));
      allow = std::max(allow, 2.0 * (a.truncation + b.truncation));
    }
  }
  e.data_violation = viol;
  e.data_allowance = allow;

  if (K == 2 && level == 1) {
    e.rhs_checked = true;
    double rv = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) rv = std::max(rv, std::abs(rhs[g.index(ir, j, kc)]));
    e.rhs_violation = rv;
  }

  e.pass = true;
  if (e.data_checked && viol / scale > tol + allow / scale) e.pass = false;
  if (e.rhs_checked && e.rhs_violation / scale > tol) e.pass = false;
}

}  // namespace

CompatReport check_compatibility(const ScalarField& rhs, const BcSpec& bc, int level) {
  const CylGrid& g = *rhs.grid();
  CompatReport rep;
  double scale = 1.0;
  for (double x : rhs.values()) scale = std::max(scale, std::abs(x));
  for (const FaceBc* f : {&bc.inflow, &bc.outflow, &bc.mantle}) {
    for (std::size_t n = 0; n < f->data.size(); ++n) scale = std::max(scale, std::abs(f->data[n]));
  }
  rep.scale = scale;
  rep.minus.edge = "edge_minus";
  rep.plus.edge = "edge_plus";
  check_edge(rep.minus, g, rhs, bc.inflow, false, bc.mantle, level, scale, rep.tolerance);
  check_edge(rep.plus, g, rhs, bc.outflow, true, bc.mantle, level, scale, rep.tolerance);
  return rep;
}

}  // namespace cylflow::poisson
