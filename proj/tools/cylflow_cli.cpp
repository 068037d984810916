// cylflow: run, verify and probe steady Euler flows in a finite cylinder.
//
//   cylflow run <config.ini>
//   cylflow verify <config.ini>
//   cylflow calibrate-k1 <config.ini>
//   cylflow probe-lipschitz <config.ini> <n_pairs>
//
// Exit codes: 0 ok, 2 no convergence, 3 hypothesis violation, 4 config
// error, 5 I/O error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cylflow/error.hpp"
#include "cylflow/run.hpp"

using namespace cylflow;
using nlohmann::json;

namespace {

void print_error(const json& rep) {
  if (!rep.contains("error")) return;
  const json& e = rep["error"];
  std::cerr << "error: " << e.value("message", std::string("unknown")) << '\n';
  if (e.contains("hypothesis")) std::cerr << "violated hypothesis: " << e["hypothesis"].get<std::string>() << '\n';
  if (e.contains("smallness") && e["smallness"].contains("note"))
    std::cerr << "note: " << e["smallness"]["note"].get<std::string>() << '\n';
}

// Writes the side report; a failure here turns into exit code 5.
int finish(const RunConfig& cfg, const std::string& name, CommandResult& r) {
  print_error(r.report);
  try {
    write_report(cfg, name, r.report);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return r.exit_code;
}

int do_run(const RunConfig& cfg) {
  CommandResult r = run_command(cfg, true);
  const json& rep = r.report;
  if (rep.contains("iterations")) {
    std::cout << "iterations " << rep["iterations"] << ", converged " << rep["converged"] << ", max ratio "
              << rep["max_ratio"] << '\n';
    const json& res = rep["residuals"];
    std::cout << "residuals: momentum " << res["momentum"] << ", divergence " << res["divergence"]
              << ", flux " << res["flux_mismatch"] << ", vorticity " << res["vorticity"] << '\n';
  }
  if (rep.contains("oracle") && rep["oracle"].value("applicable", false))
    std::cout << "columnar oracle: velocity rel L2 " << rep["oracle"]["velocity_rel_l2"] << ", pressure rel L2 "
              << rep["oracle"]["pressure_rel_l2"] << '\n';
  print_error(rep);
  if (r.exit_code != kExitConfig) std::cout << "report: " << cfg.output.directory << "/report.json\n";
  return r.exit_code;
}

int do_verify(const RunConfig& cfg) {
  CommandResult r = verify_command(cfg);
  for (const json& c : r.report["checks"])
    std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " (" << c["value"]
              << " vs " << c["threshold"] << ")\n";
  return finish(cfg, "verify.json", r);
}

int do_calibrate(const RunConfig& cfg) {
  CommandResult r = calibrate_k1_command(cfg);
  const json& rep = r.report;
  if (rep.contains("k1")) {
    std::cout << "amplitude " << rep["amplitude"] << ", ratio " << rep["ratio"] << ", bracketed "
              << rep["bracketed"] << '\n';
    std::cout << "suggested setting: [solver] k1 = " << rep["k1"] << '\n';
  }
  return finish(cfg, "calibrate_k1.json", r);
}

int do_probe(const RunConfig& cfg, int n_pairs) {
  CommandResult r = probe_lipschitz_command(cfg, n_pairs);
  const json& rep = r.report;
  if (rep.contains("k2"))
    std::cout << "K2 " << rep["k2"] << " (spread " << rep["velocity_spread"] << "), K3 " << rep["k3"]
              << " (spread " << rep["pressure_spread"] << ")\n";
  return finish(cfg, "lipschitz.json", r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady Euler flows in a finite cylinder by vorticity transport and div-curl iteration"};
  app.require_subcommand(1);
  std::string path;
  int n_pairs = 5;
  auto* run = app.add_subcommand("run", "solve and export fields and a report");
  run->add_option("config", path, "INI configuration")->required();
  auto* verify = app.add_subcommand("verify", "check the invariants of the configured problem without iterating");
  verify->add_option("config", path, "INI configuration")->required();
  auto* cal = app.add_subcommand("calibrate-k1", "bisect the data amplitude on the contraction ratio");
  cal->add_option("config", path, "INI configuration")->required();
  auto* probe = app.add_subcommand("probe-lipschitz", "measure the data-to-solution Lipschitz ratios");
  probe->add_option("config", path, "INI configuration")->required();
  probe->add_option("n_pairs", n_pairs, "number of random data pairs")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = load_config(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  if (*run) return do_run(cfg);
  if (*verify) return do_verify(cfg);
  if (*cal) return do_calibrate(cfg);
  return do_probe(cfg, n_pairs);
}
