#include "cylflow/divcurl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/fourier.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "cylflow/poisson.hpp"
#include "cylflow/stencil.hpp"
#include "sparse_mode.hpp"

namespace cylflow {

using detail::SparseSystem;
using detail::Taps;

std::string DivCurlReport::describe() const {
  std::ostringstream os;
  os << "div residual " << div_residual << (div_ok ? " <= " : " > ") << div_threshold << ", edge tangential "
     << edge_tangential << (edge_ok ? " <= " : " > ") << edge_threshold;
  return os.str();
}

DivCurlReport validate_f(const VectorField& f, const DivCurlOptions& opt) {
  const CylGrid& g = *f.grid();
  DivCurlReport rep;
  const double h = std::max(g.dr(), g.dz());
  rep.div_threshold = opt.tol_div + opt.div_gate_h2 * h * h;
  rep.edge_threshold = opt.tol_edge;
  const double fh1 = norm(f, NormKind::H1);
  if (fh1 > 0.0) rep.div_residual = norm(div(f), NormKind::L2) / fh1;

  const VectorField fc = to_cylindrical(f);
  const double fmax = norm(f, NormKind::Linf);
  if (fmax > 0.0) {
    double e = 0.0;
    for (int k : {0, g.n_z() - 1})
      for (int j = 0; j < g.n_theta(); ++j) e = std::max(e, std::abs(fc.comp(1)[g.index(g.n_r() - 1, j, k)]));
    rep.edge_tangential = e / fmax;
  }
  rep.div_ok = rep.div_residual <= rep.div_threshold;
  rep.edge_ok = rep.edge_tangential <= rep.edge_threshold;
  return rep;
}

namespace {

poisson::BcSpec axial_layout() {
  poisson::BcSpec bc;
  bc.inflow.kind = poisson::BcKind::Neumann;
  bc.outflow.kind = poisson::BcKind::Neumann;
  bc.mantle.kind = poisson::BcKind::Dirichlet;
  return bc;
}

}  // namespace

struct DivCurlSolver::Impl {
  GridPtr grid;
  DivCurlOptions opt;
  poisson::Solver axial;
  // (X, Y) = (U_r, i U_theta) per mode; unknowns X at q, Y at n + q.
  std::vector<SparseSystem> modes;

  Impl(GridPtr g, DivCurlOptions o) : grid(g), opt(o), axial(g, axial_layout()) {}
};

DivCurlSolver::DivCurlSolver(GridPtr grid, DivCurlOptions opt)
    : impl_(std::make_unique<Impl>(grid, opt)) {
  const CylGrid& g = *grid;
  const int nr = g.n_r(), nz = g.n_z(), n = nr * nz;
  const double R = g.radius();
  const double h2 = g.dr() * g.dr();
  impl_->modes.resize(static_cast<std::size_t>(g.n_modes()));
  for (int m = 0; m < g.n_modes(); ++m) {
    const double mt = dtheta_factor(m, g.n_theta());
    const double m2 = double(m) * m;
    std::vector<SparseSystem::Triplet> trip;
    trip.reserve(static_cast<std::size_t>(n) * 16);
    auto emit = [&](int row, int col_block, const Taps& t) {
      for (int q = 0; q < t.n; ++q) trip.emplace_back(row, col_block * n + t.t[q].i + nr * t.t[q].k, t.t[q].w);
    };
    for (int k = 0; k < nz; ++k) {
      for (int i = 0; i < nr; ++i) {
        const int q = i + nr * k;
        if (k == 0 || k == nz - 1) {
          trip.emplace_back(q, q, 1.0);
          trip.emplace_back(n + q, n + q, 1.0);
        } else if (i == 0) {
          if (mt == 1.0) {
            // X + Y vanishes on the axis; D = X - Y behaves like a mode-0 scalar
            trip.emplace_back(q, q, 1.0);
            trip.emplace_back(q, n + q, 1.0);
            Taps t;
            t.add(1, k, 4.0 / h2);
            t.add(0, k, -4.0 / h2);
            detail::add_dzz(t, g, 0, k, 1.0);
            emit(n + q, 0, t);
            Taps tm;
            for (int a = 0; a < t.n; ++a) tm.add(t.t[a].i, t.t[a].k, -t.t[a].w);
            emit(n + q, 1, tm);
          } else {
            trip.emplace_back(q, q, 1.0);
            trip.emplace_back(n + q, n + q, 1.0);
          }
        } else if (i == nr - 1) {
          Taps t;
          detail::add_dr(t, g, i, k, 1, 1.0);
          t.add(i, k, 1.0 / R);
          emit(q, 0, t);
          trip.emplace_back(n + q, n + q, 1.0);
        } else {
          const double r = g.r(i);
          Taps t;
          detail::add_laplacian(t, g, i, k, m2, 1.0);
          t.add(i, k, -1.0 / (r * r));
          emit(q, 0, t);
          emit(n + q, 1, t);
          if (mt != 0.0) {
            trip.emplace_back(q, n + q, -2.0 * mt / (r * r));
            trip.emplace_back(n + q, q, -2.0 * mt / (r * r));
          }
        }
      }
    }
    std::ostringstream what;
    what << "divcurl mode " << m;
    impl_->modes[static_cast<std::size_t>(m)].factorize(2 * n, trip, what.str());
  }
}

DivCurlSolver::~DivCurlSolver() = default;
DivCurlSolver::DivCurlSolver(DivCurlSolver&&) noexcept = default;
DivCurlSolver& DivCurlSolver::operator=(DivCurlSolver&&) noexcept = default;

const GridPtr& DivCurlSolver::grid() const { return impl_->grid; }
const DivCurlOptions& DivCurlSolver::options() const { return impl_->opt; }

VectorField DivCurlSolver::potential(const VectorField& f_in) const {
  const GridPtr& gp = impl_->grid;
  const CylGrid& g = *gp;
  require_same_grid(gp, f_in.grid(), "divcurl");
  if (!f_in.all_finite()) throw ValidationError("divcurl: non-finite input");
  const VectorField f = to_cylindrical(f_in);

  const ScalarField uz = impl_->axial.solve(f.comp(2), axial_layout());

  const ModeField Fr = to_modes(f.comp(0));
  const ModeField Ft = to_modes(f.comp(1));
  ModeField Ur(gp), Ut(gp);
  const int nr = g.n_r(), nz = g.n_z(), n = nr * nz;
  const cplx I(0.0, 1.0);
  for (int m = 0; m < g.n_modes(); ++m) {
    const bool axis_pair = dtheta_factor(m, g.n_theta()) == 1.0;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * n, 2);
    for (int k = 1; k < nz - 1; ++k) {
      for (int i = 0; i < nr - 1; ++i) {
        const int q = i + nr * k;
        const cplx fx = Fr(m, i, k), fy = I * Ft(m, i, k);
        cplx bx = 0.0, by = 0.0;
        if (i == 0) {
          if (axis_pair) by = fx - fy;
        } else {
          bx = fx;
          by = fy;
        }
        b(q, 0) = bx.real();
        b(q, 1) = bx.imag();
        b(n + q, 0) = by.real();
        b(n + q, 1) = by.imag();
      }
    }
    const Eigen::MatrixXd x = impl_->modes[static_cast<std::size_t>(m)].solve(b, "divcurl::solve");
    cplx* ur = Ur.mode(m);
    cplx* ut = Ut.mode(m);
    for (int q = 0; q < n; ++q) {
      ur[q] = cplx(x(q, 0), x(q, 1));
      ut[q] = -I * cplx(x(n + q, 0), x(n + q, 1));
    }
  }
  return VectorField(from_modes(Ur), from_modes(Ut), uz, Frame::Cylindrical);
}

VectorField DivCurlSolver::solve(const VectorField& f) const {
  const DivCurlReport rep = validate_f(f, impl_->opt);
  if (!rep.pass())
    throw ValidationFailure("divcurl: vorticity violates the div-curl hypotheses (div f = 0, f . tau = 0 on the "
                            "edge circles): " + rep.describe());
  VectorField w = curl(potential(f));
  w *= -1.0;
  return w;
}

VectorField solve_divcurl(const VectorField& f, const DivCurlOptions& opt) {
  DivCurlSolver s(f.grid(), opt);
  return s.solve(f);
}

double divcurl_estimate(const VectorField& w, const VectorField& f) {
  const double nf = norm(f, NormKind::L2);
  return nf > 0.0 ? norm(w, NormKind::H1) / nf : 0.0;
}

}  // namespace cylflow
