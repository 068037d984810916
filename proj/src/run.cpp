#include "cylflow/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "cylflow/error.hpp"
#include "cylflow/export.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"
#include "cylflow/profiles.hpp"

namespace cylflow {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// JSON has no infinities or NaN; they become null, which is what nlohmann
// does anyway, but an explicit string keeps +inf distinguishable.
json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

const char* hypothesis_of(const std::exception& e) {
  if (dynamic_cast<const StagnationDetected*>(&e)) return "positive axial speed along every streamline";
  if (dynamic_cast<const LengthExceeded*>(&e)) return "finite streamline length (no closed integral curves)";
  if (dynamic_cast<const DegenerateInflow*>(&e)) return "strict inflow v . n < 0 on the inflow cap";
  if (dynamic_cast<const ValidationFailure*>(&e)) return "admissible data (edge conditions, div-free vorticity)";
  if (dynamic_cast<const HypothesisViolation*>(&e)) return "velocity within the ball around the base flow";
  return nullptr;
}

json error_entry(const std::exception& e) {
  json j{{"message", e.what()}, {"exit_code", exit_code_for(e)}};
  if (const char* h = hypothesis_of(e)) j["hypothesis"] = h;
  return j;
}

json config_entry(const RunConfig& c) {
  return {{"geometry",
           {{"radius", c.geometry.radius},
            {"length", c.geometry.length},
            {"n_r", c.geometry.n_r},
            {"n_theta", c.geometry.n_theta},
            {"n_z", c.geometry.n_z}}},
          {"flux", {{"profile", c.flux.profile}, {"speed", c.flux.speed}, {"bump", c.flux.bump}}},
          {"inflow", {{"profile", c.inflow.profile}, {"amplitude", c.inflow.amplitude}, {"seed", c.inflow.seed}}},
          {"solver",
           {{"tol_fp", c.solver.tol_fp},
            {"max_iter", c.solver.max_iter},
            {"relaxation", c.solver.relaxation},
            {"k1", num(c.solver.k1)},
            {"ball_radius", c.solver.ball_radius}}}};
}

json residual_entry(const ResidualBundle& r) {
  return {{"momentum", r.momentum},
          {"divergence", r.divergence},
          {"flux_mismatch", r.flux_mismatch},
          {"vorticity", r.vorticity}};
}

json smallness_entry(double size, double k1) {
  json j{{"data_size", size}, {"k1", num(k1)}, {"calibrated", std::isfinite(k1)}};
  j["within_k1"] = size <= k1;
  if (size > k1)
    j["note"] = "boundary data exceed the smallness bound ||h||_H1 + ||grad_T g||_H1 <= K1 under which B contracts";
  return j;
}

// Oracle comparison for the columnar swirl on a unit uniform base.
json oracle_entry(const RunConfig& cfg, const FlowState& s) {
  if (cfg.inflow.profile != "columnar") return nullptr;
  if (cfg.flux.profile != "uniform" || cfg.flux.speed != 1.0)
    return {{"applicable", false}, {"reason", "the columnar solution is exact on the unit uniform base only"}};
  const GridPtr& g = s.v.grid();
  const SwirlProfile sw{cfg.geometry.radius, cfg.inflow.amplitude};
  const VectorField ve = VectorField::from_function(
      g, Frame::Cylindrical, [&](double r, double, double) { return Vec3{0.0, sw.V(r), 1.0}; });
  const ScalarField pe = ScalarField::from_function(g, [&](double r, double, double) { return sw.head(r) - 0.5; });
  const double nv = norm(ve, NormKind::L2), np = norm(pe, NormKind::L2);
  return {{"applicable", true},
          {"velocity_rel_l2", norm(to_cartesian(s.v) - to_cartesian(ve), NormKind::L2) / nv},
          {"pressure_rel_l2", norm(s.p - pe, NormKind::L2) / np}};
}

json history_entry(const std::vector<IterationRecord>& h) {
  json a = json::array();
  for (const IterationRecord& r : h)
    a.push_back({{"iter", r.iter},
                 {"update_norm", r.update_norm},
                 {"ratio", num(r.ratio)},
                 {"momentum_res", num(r.momentum_res)},
                 {"div_res", num(r.div_res)},
                 {"u_norm", r.u_norm}});
  return a;
}

std::filesystem::path out_dir(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.output.directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NoConvergence*>(&e)) return kExitNoConvergence;
  if (dynamic_cast<const HypothesisViolation*>(&e)) return kExitHypothesis;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const InvalidGrid*>(&e) || dynamic_cast<const IncompatibleData*>(&e))
    return kExitConfig;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitOther;
}

void write_report(const RunConfig& cfg, const std::string& name, const json& report) {
  const std::filesystem::path path = out_dir(cfg) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << report.dump(2) << '\n';
  if (!out) throw IoError("write to " + path.string() + " failed");
}

CommandResult run_command(const RunConfig& cfg, bool write_outputs) {
  CommandResult res;
  json& rep = res.report;
  rep["command"] = "run";
  rep["config"] = config_entry(cfg);
  json& timing = rep["timing_s"];
  const auto t0 = Clock::now();
  std::optional<double> data_size;
  try {
    cfg.validate();
    const GridPtr g = make_grid(cfg);
    const FluxData flux = make_flux(cfg, g);
    const FluxReport fr = check_flux(flux);
    rep["flux"] = {{"balance", fr.balance}, {"balanced", fr.balanced}, {"c", fr.c}};
    auto t = Clock::now();
    const BaseFlow base = make_base_flow(flux);
    timing["base_flow"] = seconds_since(t);
    rep["base_flow"] = {{"c_min", base.c_min}, {"residuals", residual_entry(euler_residual(base.v0, base.p0, base))}};

    const InflowData data = make_inflow(cfg, g);
    const InflowReport ir = validate(data, cfg.solver.k1);
    data_size = ir.data_size;
    rep["inflow"] = {{"edge_h", ir.edge_h},
                     {"edge_grad_g", ir.edge_grad_g},
                     {"edge_allowance", ir.edge_allowance},
                     {"edge_ok", ir.edge_ok}};
    rep["smallness"] = smallness_entry(ir.data_size, cfg.solver.k1);

    t = Clock::now();
    FlowState s = fixed_point_iterate(cfg.solver, data, base);
    timing["fixed_point"] = seconds_since(t);
    rep["converged"] = s.converged;
    rep["iterations"] = s.iterations;
    rep["max_ratio"] = s.max_ratio();
    rep["history"] = history_entry(s.history);
    rep["residuals"] = residual_entry(s.residuals);

    InflowData dp = data;
    project_edges(dp);
    const CapVectorField f0 = make_f0(dp, s.v, base.c_min);
    const TransportEstimates te = transport_estimates(s.f_transport, f0);
    const DivCurlReport dc = validate_f(s.f_transport, cfg.solver.divcurl);
    rep["estimates"] = {{"gamma_hat", norm(s.u, NormKind::H1)},
                        {"transport_ratio_l2", te.ratio_l2},
                        {"transport_ratio_h1", te.ratio_h1},
                        {"divcurl_ratio", divcurl_estimate(s.u, s.f_transport)}};
    const double vz_min = min_axial(s.v);
    rep["hypotheses"] = {
        {"positive_axial_speed", {{"min_vz", vz_min}, {"c_min", base.c_min}, {"ok", vz_min >= 0.5 * base.c_min}}},
        {"edge_conditions", ir.edge_ok},
        {"divcurl_input", {{"report", dc.describe()}, {"ok", dc.pass()}}},
        {"within_k1", ir.within_k1}};
    if (json o = oracle_entry(cfg, s); !o.is_null()) rep["oracle"] = o;

    if (!s.converged) {
      res.exit_code = kExitNoConvergence;
      const double last = s.history.back().ratio;
      rep["error"] = {{"message", "fixed point not reached within max_iter"}, {"exit_code", kExitNoConvergence}};
      if (std::isfinite(last) && last >= 1.0)
        rep["error"]["hypothesis"] = "smallness of the boundary data (contraction ratio >= 1)";
    }
    if (write_outputs) {
      t = Clock::now();
      const std::filesystem::path dir = out_dir(cfg);
      write_history_csv((dir / "history.csv").string(), s.history);
      if (cfg.output.csv) write_fields_csv((dir / "fields.csv").string(), s);
      if (cfg.output.vtk) write_vtk((dir / "fields.vtk").string(), s);
      timing["export"] = seconds_since(t);
    }
    res.state = std::move(s);
  } catch (const std::exception& e) {
    res.exit_code = exit_code_for(e);
    rep["error"] = error_entry(e);
    if (data_size && res.exit_code == kExitHypothesis && *data_size > cfg.solver.k1)
      rep["error"]["smallness"] = smallness_entry(*data_size, cfg.solver.k1);
  }
  timing["total"] = seconds_since(t0);
  if (write_outputs && res.exit_code != kExitConfig) {
    try {
      write_report(cfg, "report.json", rep);
    } catch (const IoError& e) {
      res.exit_code = kExitIo;
      rep["error"] = error_entry(e);
    }
  }
  return res;
}

CommandResult verify_command(const RunConfig& cfg) {
  CommandResult res;
  json& rep = res.report;
  rep["command"] = "verify";
  rep["config"] = config_entry(cfg);
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, double value, double threshold, bool ok) {
    checks.push_back({{"name", name}, {"value", num(value)}, {"threshold", num(threshold)}, {"pass", ok}});
    all = all && ok;
  };
  try {
    cfg.validate();
    const GridPtr g = make_grid(cfg);
    const FluxData flux = make_flux(cfg, g);
    const FluxReport fr = check_flux(flux);
    check("flux balance", std::abs(fr.balance), 1e-10 * fr.balance_scale, fr.balanced);
    const BaseFlow base = make_base_flow(flux);
    check("base flow axial speed", base.c_min, 0.0, base.c_min > 0.0);
    const ResidualBundle r0 = euler_residual(base.v0, base.p0, base);
    check("base flow is irrotational", r0.vorticity, 1e-8, r0.vorticity <= 1e-8);
    const ScalarField p0 = recover_pressure(base.v0, InflowData::zero(g), base);
    const double dp = norm(p0 - base.p0, NormKind::Linf);
    check("pressure recovery on the base flow", dp, 1e-10, dp <= 1e-10);

    InflowData data = make_inflow(cfg, g);
    const InflowReport ir = validate(data, cfg.solver.k1);
    check("inflow edge conditions", std::max(ir.edge_h, ir.edge_grad_g), ir.edge_allowance, ir.edge_ok);
    rep["smallness"] = smallness_entry(ir.data_size, cfg.solver.k1);
    if (ir.edge_ok) {
      project_edges(data);
      TransportOptions topt = cfg.solver.transport;
      if (!(topt.c_min > 0.0)) topt.c_min = base.c_min;
      const CapVectorField f0 = make_f0(data, base.v0, base.c_min);
      const TransportField tf = solve_transport(base.v0, f0, topt);
      double edge = 0.0;
      for (int j = 0; j < g->n_theta(); ++j) {
        const Vec3 f = tf.f.at(g->index(g->n_r() - 1, j, g->n_z() - 1));
        edge = std::max(edge, std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]));
      }
      check("vorticity vanishes on the outflow edge", edge, 1e-6, edge <= 1e-6);
      const DivCurlReport dc = validate_f(tf.f, cfg.solver.divcurl);
      check("transported vorticity is divergence free", dc.div_residual, dc.div_threshold, dc.div_ok);
      check("transported vorticity edge-tangential part", dc.edge_tangential, dc.edge_threshold, dc.edge_ok);
      check("transport ODE error", tf.max_error, 1e-6, tf.max_error <= 1e-6);
      if (dc.pass()) {
        const VectorField w = to_cylindrical(DivCurlSolver(g, cfg.solver.divcurl).solve(tf.f));
        double wn = 0.0;
        for (std::size_t n = 0; n < g->size(); ++n) {
          const NodeIndex id = g->unravel(n);
          if (id.k == 0 || id.k == g->n_z() - 1) wn = std::max(wn, std::abs(w.comp(2)[n]));
          if (id.i == g->n_r() - 1) wn = std::max(wn, std::abs(w.comp(0)[n]));
        }
        const double scale = 1e-10 * (1.0 + norm(w, NormKind::Linf));
        check("div-curl solution is tangent to the boundary", wn, scale, wn <= scale);
      }
    }
    res.exit_code = all ? kExitOk : kExitHypothesis;
  } catch (const std::exception& e) {
    res.exit_code = exit_code_for(e);
    rep["error"] = error_entry(e);
  }
  rep["checks"] = checks;
  rep["pass"] = all && res.exit_code == kExitOk;
  return res;
}

CommandResult calibrate_k1_command(const RunConfig& cfg) {
  CommandResult res;
  json& rep = res.report;
  rep["command"] = "calibrate-k1";
  rep["config"] = config_entry(cfg);
  try {
    cfg.validate();
    if (cfg.inflow.profile == "zero")
      throw ValidationError("calibrate-k1 needs a columnar or random inflow profile, not zero");
    const GridPtr g = make_grid(cfg);
    const BaseFlow base = make_base_flow(make_flux(cfg, g));
    const K1Calibration cal = calibrate_k1([&](double a) { return make_inflow(cfg, g, a); }, base, cfg.solver,
                                           cfg.probe.amp_lo, cfg.probe.amp_hi, cfg.probe.threshold,
                                           cfg.probe.bisections);
    json samples = json::array();
    for (const auto& [a, r] : cal.samples) samples.push_back({{"amplitude", a}, {"ratio", num(r)}});
    rep["bracketed"] = cal.bracketed;
    rep["amplitude"] = cal.amplitude;
    rep["k1"] = cal.k1;
    rep["ratio"] = cal.ratio;
    rep["threshold"] = cfg.probe.threshold;
    rep["samples"] = samples;
    if (!cal.bracketed)
      rep["note"] = cal.amplitude > 0.0 ? "ratio stayed below the threshold over the whole search range"
                                        : "ratio already above the threshold at amp_lo";
  } catch (const std::exception& e) {
    res.exit_code = exit_code_for(e);
    rep["error"] = error_entry(e);
  }
  return res;
}

CommandResult probe_lipschitz_command(const RunConfig& cfg, int n_pairs) {
  CommandResult res;
  json& rep = res.report;
  rep["command"] = "probe-lipschitz";
  rep["config"] = config_entry(cfg);
  try {
    cfg.validate();
    if (n_pairs < 1) throw ValidationError("probe-lipschitz needs at least one pair");
    const GridPtr g = make_grid(cfg);
    const BaseFlow base = make_base_flow(make_flux(cfg, g));
    const double a = cfg.probe.lipschitz_amplitude;
    std::vector<std::pair<InflowData, InflowData>> pairs;
    for (int n = 0; n < n_pairs; ++n) {
      const std::uint64_t s = cfg.inflow.seed + 2 * static_cast<std::uint64_t>(n);
      pairs.emplace_back(random_inflow_data(g, a, s), random_inflow_data(g, a, s + 1));
    }
    const LipschitzReport lr = lipschitz_probe(pairs, cfg.solver, base);
    json arr = json::array();
    for (const LipschitzPair& p : lr.pairs)
      arr.push_back({{"skipped", p.skipped},
                     {"data_distance", p.data_distance},
                     {"velocity_ratio", p.velocity_ratio},
                     {"pressure_ratio", p.pressure_ratio}});
    rep["amplitude"] = a;
    rep["pairs"] = arr;
    rep["k2"] = lr.k2;
    rep["k3"] = lr.k3;
    rep["velocity_spread"] = lr.velocity_spread;
    rep["pressure_spread"] = lr.pressure_spread;
  } catch (const std::exception& e) {
    res.exit_code = exit_code_for(e);
    rep["error"] = error_entry(e);
  }
  return res;
}

}  // namespace cylflow
