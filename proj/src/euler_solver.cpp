#include "cylflow/euler_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"

namespace cylflow {

void SolverConfig::check() const {
  std::ostringstream os;
  if (!(tol_fp > 0.0)) os << "tol_fp must be > 0; ";
  if (max_iter < 1) os << "max_iter must be >= 1; ";
  if (!(relaxation > 0.0 && relaxation <= 1.0)) os << "relaxation must lie in (0, 1]; ";
  if (!(k1 > 0.0)) os << "k1 must be > 0; ";
  if (transport.substeps < 1) os << "substeps must be >= 1; ";
  if (!(divcurl.tol_div >= 0.0) || !(divcurl.div_gate_h2 >= 0.0) || !(divcurl.tol_edge >= 0.0))
    os << "div-curl tolerances must be >= 0; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw ValidationError("solver config: " + msg.substr(0, msg.size() - 2));
}

double ResidualBundle::max() const { return std::max({momentum, divergence, flux_mismatch, vorticity}); }

double FlowState::max_ratio() const {
  double m = 0.0;
  for (const IterationRecord& r : history)
    if (std::isfinite(r.ratio)) m = std::max(m, r.ratio);
  return m;
}

namespace {

VectorField cylindrical(const VectorField& f) {
  return f.frame() == Frame::Cylindrical ? f : to_cylindrical(f);
}

TransportOptions transport_options(const SolverConfig& cfg, const BaseFlow& base) {
  TransportOptions t = cfg.transport;
  if (!(t.c_min > 0.0)) t.c_min = base.c_min;
  return t;
}

InflowData admissible(const InflowData& data, double k1, InflowReport* report) {
  const InflowReport rep = validate(data, k1);
  if (report) *report = rep;
  if (!rep.pass()) {
    std::ostringstream os;
    os << "inflow data violate the edge conditions h = 0, grad_T g = 0 on the inflow edge circle (max |h| = "
       << rep.edge_h << ", max |grad_T g| = " << rep.edge_grad_g << ", allowance " << rep.edge_allowance << ")";
    throw ValidationFailure(os.str());
  }
  InflowData d = data;
  project_edges(d);
  return d;
}

}  // namespace

ResidualBundle euler_residual(const VectorField& v_in, const ScalarField& p, const BaseFlow& base) {
  const VectorField v = cylindrical(v_in);
  require_same_grid(v.grid(), p.grid(), "euler_residual");
  const CylGrid& g = *v.grid();
  ResidualBundle r;
  const VectorField vc = to_cartesian(v);
  VectorField mom = advect(vc, vc);
  mom += to_cartesian(grad(p));
  r.momentum = norm(mom, NormKind::L2);
  r.divergence = norm(div(v), NormKind::L2);

  const bool have_flux = base.flux.phi_minus.size() > 0;
  const int kl = g.n_z() - 1, il = g.n_r() - 1;
  double s = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const std::size_t a = g.index(i, j, 0), b = g.index(i, j, kl);
      const double pm = have_flux ? base.flux.phi_minus.at(i, j) : -base.v0.comp(2)[a];
      const double pp = have_flux ? base.flux.phi_plus.at(i, j) : base.v0.comp(2)[b];
      const double dm = -v.comp(2)[a] - pm, dp = v.comp(2)[b] - pp;
      s += g.cap_area_weight(i) * (dm * dm + dp * dp);
    }
  }
  for (int k = 0; k < g.n_z(); ++k) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const double d = v.comp(0)[g.index(il, j, k)];
      s += g.mantle_area_weight(k) * d * d;
    }
  }
  r.flux_mismatch = std::sqrt(s);

  const VectorField w = to_cartesian(curl(v));
  r.vorticity = norm(advect(vc, w) - advect(w, vc), NormKind::L2);
  return r;
}

BOutput apply_B(const VectorField& u_in, const InflowData& data, const BaseFlow& base, const DivCurlSolver& solver,
                const SolverConfig& cfg) {
  const VectorField u = cylindrical(u_in);
  require_same_grid(u.grid(), base.v0.grid(), "apply_B");
  if (cfg.ball_radius > 0.0) {
    const double un = norm(u, NormKind::H1);
    if (un > cfg.ball_radius) {
      std::ostringstream os;
      os << "apply_B: ||u||_H1 = " << un << " lies outside the ball of radius " << cfg.ball_radius
         << " around the base flow";
      throw HypothesisViolation(os.str());
    }
  }
  const VectorField v = base.v0 + u;
  BOutput out;
  out.f0 = make_f0(data, v, base.c_min);
  out.transport = solve_transport(v, out.f0, transport_options(cfg, base));
  out.f = out.transport.f;
  out.w = solver.solve(out.f);
  return out;
}

ScalarField recover_pressure(const VectorField& v_in, const InflowData& data, const BaseFlow& base,
                             const TransportOptions& opt) {
  const VectorField v = cylindrical(v_in);
  const CylGrid& g = *v.grid();
  CapField H0 = data.g;
  for (int i = 0; i < g.n_r(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const Vec3 a = base.v0.at(g.index(i, j, 0));
      H0.at(i, j) += 0.5 * (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) + base.p0[g.index(i, j, 0)];
    }
  }
  TransportOptions t = opt;
  if (!(t.c_min > 0.0)) t.c_min = base.c_min;
  ScalarField p = transport_scalar(v, H0, t);
  for (std::size_t n = 0; n < p.size(); ++n) {
    const Vec3 a = v.at(n);
    p[n] -= 0.5 * (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  }
  return p;
}

FlowState fixed_point_iterate(const SolverConfig& cfg, const InflowData& data, const BaseFlow& base) {
  cfg.check();
  require_same_grid(data.grid(), base.v0.grid(), "fixed_point_iterate");
  InflowReport rep;
  const InflowData d = admissible(data, cfg.k1, &rep);
  const GridPtr& gp = base.v0.grid();
  const DivCurlSolver solver(gp, cfg.divcurl);
  const TransportOptions topt = transport_options(cfg, base);
  const double om = cfg.relaxation;

  FlowState st;
  st.data_size = rep.data_size;
  st.within_k1 = rep.within_k1;
  VectorField u(gp, Frame::Cylindrical);
  double prev = 0.0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    BOutput b = apply_B(u, d, base, solver, cfg);
    VectorField next = (1.0 - om) * u + om * b.w;
    IterationRecord rec;
    rec.iter = it;
    rec.update_norm = norm(next - u, NormKind::H1);
    if (it > 1 && prev > 0.0) rec.ratio = rec.update_norm / prev;
    prev = rec.update_norm;
    u = std::move(next);
    st.f_transport = std::move(b.f);
    rec.u_norm = norm(u, NormKind::H1);
    if (cfg.record_residuals) {
      const VectorField v = base.v0 + u;
      const ResidualBundle r = euler_residual(v, recover_pressure(v, d, base, topt), base);
      rec.momentum_res = r.momentum;
      rec.div_res = r.divergence;
    }
    st.history.push_back(rec);
    st.iterations = it;
    if (rec.update_norm < cfg.tol_fp) {
      st.converged = true;
      break;
    }
  }
  st.v = base.v0 + u;
  st.u = std::move(u);
  st.p = recover_pressure(st.v, d, base, topt);
  st.f = curl(st.v);
  st.residuals = euler_residual(st.v, st.p, base);
  return st;
}

FlowState fixed_point_solve(const SolverConfig& cfg, const InflowData& data, const BaseFlow& base) {
  FlowState st = fixed_point_iterate(cfg, data, base);
  if (!st.converged) {
    const IterationRecord& last = st.history.back();
    std::ostringstream os;
    os << "fixed point not reached after " << cfg.max_iter << " iterations (last update " << last.update_norm
       << ", last ratio " << last.ratio << ")";
    if (std::isfinite(last.ratio) && last.ratio >= 1.0)
      os << "; ratio >= 1 suggests the data size " << st.data_size
         << " exceeds the admissible smallness bound K1";
    throw NoConvergence(os.str());
  }
  return st;
}

LipschitzReport lipschitz_probe(const std::vector<std::pair<InflowData, InflowData>>& pairs, const SolverConfig& cfg,
                                const BaseFlow& base) {
  LipschitzReport rep;
  double vmin = INFINITY, pmin = INFINITY;
  for (const auto& [d1, d2] : pairs) {
    LipschitzPair lp;
    const CapField dh = d1.h - d2.h, dg = d1.g - d2.g;
    lp.data_distance = norm(dh, NormKind::L2) + norm(cap_gradient(dg), NormKind::L2);
    const double pd = lp.data_distance + norm(dg, NormKind::L2);
    if (!(pd > 0.0)) {
      lp.skipped = true;
      rep.pairs.push_back(lp);
      continue;
    }
    const FlowState s1 = fixed_point_solve(cfg, d1, base), s2 = fixed_point_solve(cfg, d2, base);
    lp.velocity_ratio = lp.data_distance > 0.0 ? norm(s1.v - s2.v, NormKind::H1) / lp.data_distance : 0.0;
    lp.pressure_ratio = norm(s1.p - s2.p, NormKind::H1) / pd;
    rep.k2 = std::max(rep.k2, lp.velocity_ratio);
    rep.k3 = std::max(rep.k3, lp.pressure_ratio);
    vmin = std::min(vmin, lp.velocity_ratio);
    pmin = std::min(pmin, lp.pressure_ratio);
    rep.pairs.push_back(lp);
  }
  if (std::isfinite(vmin) && vmin > 0.0) rep.velocity_spread = rep.k2 / vmin;
  if (std::isfinite(pmin) && pmin > 0.0) rep.pressure_spread = rep.k3 / pmin;
  return rep;
}

double second_iterate_ratio(const InflowData& data, const BaseFlow& base, const DivCurlSolver& solver,
                            const SolverConfig& cfg) {
  try {
    const InflowData d = admissible(data, cfg.k1, nullptr);
    const double om = cfg.relaxation;
    const VectorField u0(base.v0.grid(), Frame::Cylindrical);
    const VectorField u1 = om * apply_B(u0, d, base, solver, cfg).w;
    const double n1 = norm(u1, NormKind::H1);
    if (!(n1 > 0.0)) return 0.0;
    const VectorField u2 = (1.0 - om) * u1 + om * apply_B(u1, d, base, solver, cfg).w;
    return norm(u2 - u1, NormKind::H1) / n1;
  } catch (const HypothesisViolation&) {
    return INFINITY;
  }
}

K1Calibration calibrate_k1(const std::function<InflowData(double)>& family, const BaseFlow& base,
                           const SolverConfig& cfg, double amp_lo, double amp_hi, double threshold, int bisections,
                           int max_doublings) {
  cfg.check();
  if (!(amp_lo > 0.0 && amp_hi > amp_lo)) throw ValidationError("calibrate_k1: need 0 < amp_lo < amp_hi");
  const DivCurlSolver solver(base.v0.grid(), cfg.divcurl);
  K1Calibration cal;
  auto ratio = [&](double a) {
    const double r = second_iterate_ratio(family(a), base, solver, cfg);
    cal.samples.emplace_back(a, r);
    return r;
  };
  auto finish = [&](double a, double r) {
    cal.amplitude = a;
    cal.ratio = r;
    cal.k1 = a > 0.0 ? data_size(family(a)) : 0.0;
    return cal;
  };

  double lo = amp_lo, hi = amp_hi;
  const double r_lo = ratio(lo);
  if (!(r_lo < threshold)) return finish(0.0, r_lo);
  double r_hi = ratio(hi);
  for (int n = 0; n < max_doublings && r_hi < threshold; ++n) {
    lo = hi;
    hi *= 2.0;
    r_hi = ratio(hi);
  }
  if (r_hi < threshold) return finish(hi, r_hi);
  cal.bracketed = true;
  double r_at_lo = r_lo;
  for (const auto& [a, r] : cal.samples)
    if (a == lo) r_at_lo = r;
  for (int b = 0; b < bisections; ++b) {
    const double mid = 0.5 * (lo + hi);
    const double r = ratio(mid);
    if (r < threshold) {
      lo = mid;
      r_at_lo = r;
    } else {
      hi = mid;
    }
  }
  return finish(lo, r_at_lo);
}

}  // namespace cylflow
