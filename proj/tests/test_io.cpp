#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cylflow/config.hpp"
#include "cylflow/error.hpp"
#include "cylflow/export.hpp"
#include "cylflow/run.hpp"
#include "doctest.h"

using namespace cylflow;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.ini");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cylflow_test_io_" + name);
  fs::remove_all(p);
  return p;
}

FlowState small_state() {
  RunConfig cfg;
  cfg.geometry = {1.0, 1.0, 4, 4, 4};
  cfg.inflow.profile = "zero";
  CommandResult r = run_command(cfg, false);
  REQUIRE(r.exit_code == kExitOk);
  return *r.state;
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
  const RunConfig c = parse("[geometry]\nradius = 2.5\n");
  CHECK(c.geometry.radius == 2.5);
  CHECK(c.geometry.length == 2.0);
  CHECK(c.geometry.n_r == 17);
  CHECK(c.flux.profile == "uniform");
  CHECK(c.inflow.profile == "zero");
  CHECK(c.solver.tol_fp == 1e-9);
  CHECK(c.solver.max_iter == 40);
  CHECK(c.solver.relaxation == 1.0);
  CHECK(std::isinf(c.solver.k1));
  CHECK(c.output.csv);
  const RunConfig empty = parse("");
  CHECK(empty.geometry.radius == 1.0);
}

TEST_CASE("unknown keys, sections and malformed values are parse errors") {
  try {
    parse("[solver]\ntol_fp = 1e-8\nvorticity_hack = 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string m = e.what();
    CHECK(m.find("vorticity_hack") != std::string::npos);
    CHECK(m.find("test.ini:3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("[turbulence]\nmodel = k-eps\n"), ParseError);
  CHECK_THROWS_AS(parse("radius = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("[geometry]\nn_r = 12.5\n"), ParseError);
  CHECK_THROWS_AS(parse("[geometry]\nradius = one\n"), ParseError);
  CHECK_THROWS_AS(parse("[output]\ncsv = maybe\n"), ParseError);
  CHECK_THROWS_AS(parse("[geometry\nradius = 1\n"), ParseError);
}

TEST_CASE("out-of-range values are validation errors") {
  CHECK_THROWS_AS(parse("[geometry]\nradius = -1\n"), ValidationError);
  CHECK_THROWS_AS(parse("[geometry]\nn_theta = 7\n"), ValidationError);
  CHECK_THROWS_AS(parse("[flux]\nprofile = parabolic\n"), ValidationError);
  CHECK_THROWS_AS(parse("[inflow]\nprofile = columnar\namplitude = -0.1\n"), ValidationError);
  CHECK_THROWS_AS(parse("[solver]\nrelaxation = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("[probe]\namp_lo = 0.2\namp_hi = 0.1\n"), ValidationError);
}

TEST_CASE("config round trip and output directory override") {
  RunConfig c = parse(
      "[geometry]\nn_r = 9\nn_theta = 12\n[flux]\nprofile = bump\nbump = 0.25\n[inflow]\nprofile = random\n"
      "amplitude = 0.03\nseed = 99\n[solver]\nk1 = 4.5\nsubsteps = 3\nrecord_residuals = false\n"
      "[output]\ndirectory = somewhere\nvtk = no\n");
  const RunConfig d = parse(to_ini(c));
  CHECK(d.geometry.n_theta == 12);
  CHECK(d.flux.bump == 0.25);
  CHECK(d.inflow.seed == 99);
  CHECK(d.inflow.amplitude == 0.03);
  CHECK(d.solver.k1 == 4.5);
  CHECK(d.solver.transport.substeps == 3);
  CHECK_FALSE(d.solver.record_residuals);
  CHECK(d.output.directory == "somewhere");
  CHECK_FALSE(d.output.vtk);
  CHECK(std::isinf(parse(to_ini(RunConfig{})).solver.k1));

  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  const fs::path file = dir / "c.ini";
  std::ofstream(file) << "[output]\ndirectory = from_file\n";
  ::unsetenv("CYLFLOW_OUTPUT_DIR");
  CHECK(load_config(file.string()).output.directory == "from_file");
  ::setenv("CYLFLOW_OUTPUT_DIR", "from_env", 1);
  CHECK(load_config(file.string()).output.directory == "from_env");
  ::unsetenv("CYLFLOW_OUTPUT_DIR");
  CHECK_THROWS_AS(load_config((dir / "missing.ini").string()), IoError);
}

TEST_CASE("field CSV layout and round trip") {
  const FlowState s = small_state();
  std::ostringstream os;
  write_fields_csv(os, s.v, s.p, s.f);
  const std::string text = os.str();
  CHECK(text.rfind("r,theta,z,vr,vtheta,vz,p,fr,ftheta,fz\n", 0) == 0);
  CHECK(text.back() == '\n');
  std::istringstream in(text);
  const CsvTable t = read_csv(in);
  REQUIRE(t.rows.size() == 64);
  CHECK(t.header.size() == 10);
  const CylGrid& g = *s.v.grid();
  for (std::size_t n = 0; n < g.size(); ++n) {
    const NodeIndex id = g.unravel(n);
    const auto& row = t.rows[n];
    CHECK(row[0] == g.r(id.i));
    CHECK(row[1] == g.theta(id.j));
    CHECK(row[2] == g.z(id.k));
    for (int a = 0; a < 3; ++a) CHECK(row[3 + a] == s.v.comp(a)[n]);
    CHECK(row[6] == s.p[n]);
  }
  // every printed value parses back to the same double
  std::ostringstream again;
  write_fields_csv(again, s.v, s.p, s.f);
  CHECK(again.str() == text);
}

TEST_CASE("history CSV and VTK structure") {
  const FlowState s = small_state();
  std::ostringstream h;
  write_history_csv(h, s.history);
  std::istringstream hin(h.str());
  const CsvTable ht = read_csv(hin);
  CHECK(ht.header == std::vector<std::string>{"iter", "update_norm", "ratio", "momentum_res", "div_res"});
  CHECK(ht.rows.size() == s.history.size());
  CHECK(std::isnan(ht.rows[0][2]));

  std::ostringstream v;
  write_vtk(v, s.v, s.p, s.f);
  const std::string text = v.str();
  CHECK(text.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
  CHECK(text.find("DATASET STRUCTURED_GRID\nDIMENSIONS 5 4 4\nPOINTS 80 double\n") != std::string::npos);
  CHECK(text.find("POINT_DATA 80\n") != std::string::npos);
  CHECK(text.find("VECTORS velocity double\n") != std::string::npos);
  CHECK(text.find("SCALARS pressure double 1\nLOOKUP_TABLE default\n") != std::string::npos);
  CHECK(text.find("VECTORS vorticity double\n") != std::string::npos);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 6 + 80 + 1 + 81 + 82 + 81);
}

TEST_CASE("run exit codes and reports") {
  RunConfig cfg;
  cfg.geometry = {1.0, 1.0, 9, 8, 9};
  cfg.output.directory = scratch("zero").string();
  CommandResult zero = run_command(cfg);
  CHECK(zero.exit_code == kExitOk);
  CHECK(zero.report["iterations"] == 1);
  for (const char* f : {"report.json", "history.csv", "fields.csv", "fields.vtk"})
    CHECK(fs::exists(fs::path(cfg.output.directory) / f));
  const nlohmann::json back = nlohmann::json::parse(slurp(fs::path(cfg.output.directory) / "report.json"));
  CHECK(back["converged"] == true);

  cfg.geometry = {1.0, 2.0, 17, 8, 9};
  cfg.inflow = {"columnar", 0.05, 1};
  cfg.output.directory = scratch("columnar").string();
  CommandResult col = run_command(cfg);
  CHECK(col.exit_code == kExitOk);
  REQUIRE(col.report.contains("oracle"));
  CHECK(col.report["oracle"]["velocity_rel_l2"].get<double>() < 0.01);

  cfg.solver.max_iter = 1;
  cfg.solver.tol_fp = 1e-300;
  CHECK(run_command(cfg, false).exit_code == kExitNoConvergence);

  RunConfig big;
  big.geometry = {1.0, 2.0, 33, 8, 17};
  big.flux = {"bump", 1.0, 0.3};
  big.inflow = {"random", 2.0, 7};
  big.solver.k1 = 10.0;
  big.output.directory = scratch("big").string();
  CommandResult r = run_command(big);
  CHECK(r.exit_code == kExitHypothesis);
  CHECK(r.report["error"].contains("hypothesis"));
  CHECK(r.report["error"]["smallness"]["within_k1"] == false);
  CHECK(fs::exists(fs::path(big.output.directory) / "report.json"));

  RunConfig bad;
  bad.geometry.radius = -1.0;
  CHECK(run_command(bad, false).exit_code == kExitConfig);

  CHECK(exit_code_for(IoError("x")) == kExitIo);
  CHECK(exit_code_for(ParseError("x")) == kExitConfig);
  CHECK(exit_code_for(StagnationDetected("x")) == kExitHypothesis);
  CHECK(exit_code_for(NoConvergence("x")) == kExitNoConvergence);
}

TEST_CASE("identical runs export byte-identical CSV") {
  RunConfig cfg;
  cfg.geometry = {1.0, 2.0, 17, 8, 9};
  cfg.flux = {"bump", 1.0, 0.2};
  cfg.inflow = {"columnar", 0.05, 1};
  cfg.output.vtk = false;
  cfg.output.directory = scratch("det_a").string();
  REQUIRE(run_command(cfg).exit_code == kExitOk);
  const std::string a = slurp(fs::path(cfg.output.directory) / "fields.csv");
  cfg.output.directory = scratch("det_b").string();
  REQUIRE(run_command(cfg).exit_code == kExitOk);
  CHECK(a == slurp(fs::path(cfg.output.directory) / "fields.csv"));
  CHECK(a.size() > 1000);
}

TEST_CASE("verify and the probe commands") {
  RunConfig cfg;
  cfg.geometry = {1.0, 2.0, 25, 8, 9};
  cfg.flux = {"bump", 1.0, 0.3};
  cfg.inflow = {"random", 0.05, 3};
  const CommandResult v = verify_command(cfg);
  CHECK(v.exit_code == kExitOk);
  CHECK(v.report["pass"] == true);
  CHECK(v.report["checks"].size() >= 8);

  const CommandResult p = probe_lipschitz_command(cfg, 2);
  CHECK(p.exit_code == kExitOk);
  CHECK(p.report["pairs"].size() == 2);
  CHECK(p.report["k2"].get<double>() > 0.0);

  cfg.inflow.profile = "zero";
  CHECK(calibrate_k1_command(cfg).exit_code == kExitConfig);
}
