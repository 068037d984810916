#include "cylflow/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/profiles.hpp"

namespace cylflow {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Line of `key` inside `[section]`, 0 when not found.
int line_of(const std::string& text, const std::string& section, const std::string& key) {
  std::istringstream in(text);
  std::string line, current;
  for (int n = 1; std::getline(in, line); ++n) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[') {
      current = trim(t.substr(1, t.find(']') - 1));
      if (key.empty() && current == section) return n;
      continue;
    }
    if (current == section && trim(t.substr(0, t.find('='))) == key) return n;
  }
  return 0;
}

struct Ctx {
  const std::string& source;
  const std::string& text;
  std::string section, key, value;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << source;
    if (const int n = line_of(text, section, key)) os << ":" << n;
    os << ": [" << section << "] " << key << " = '" << value << "': " << what;
    throw ParseError(os.str());
  }

  double real() const {
    double x = 0.0;
    const char* b = value.data();
    const auto [p, ec] = std::from_chars(b, b + value.size(), x);
    if (ec != std::errc() || p != b + value.size()) fail("expected a number");
    if (!std::isfinite(x)) fail("expected a finite number");
    return x;
  }
  int integer() const {
    int x = 0;
    const char* b = value.data();
    const auto [p, ec] = std::from_chars(b, b + value.size(), x);
    if (ec != std::errc() || p != b + value.size()) fail("expected an integer");
    return x;
  }
  std::uint64_t unsigned64() const {
    std::uint64_t x = 0;
    const char* b = value.data();
    const auto [p, ec] = std::from_chars(b, b + value.size(), x);
    if (ec != std::errc() || p != b + value.size()) fail("expected a non-negative integer");
    return x;
  }
  bool boolean() const {
    if (value == "true" || value == "yes" || value == "on" || value == "1") return true;
    if (value == "false" || value == "no" || value == "off" || value == "0") return false;
    fail("expected true or false");
  }
};

using Setter = std::function<void(RunConfig&, const Ctx&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s = {
      {"geometry",
       {{"radius", [](RunConfig& c, const Ctx& x) { c.geometry.radius = x.real(); }},
        {"length", [](RunConfig& c, const Ctx& x) { c.geometry.length = x.real(); }},
        {"n_r", [](RunConfig& c, const Ctx& x) { c.geometry.n_r = x.integer(); }},
        {"n_theta", [](RunConfig& c, const Ctx& x) { c.geometry.n_theta = x.integer(); }},
        {"n_z", [](RunConfig& c, const Ctx& x) { c.geometry.n_z = x.integer(); }}}},
      {"flux",
       {{"profile", [](RunConfig& c, const Ctx& x) { c.flux.profile = x.value; }},
        {"speed", [](RunConfig& c, const Ctx& x) { c.flux.speed = x.real(); }},
        {"bump", [](RunConfig& c, const Ctx& x) { c.flux.bump = x.real(); }}}},
      {"inflow",
       {{"profile", [](RunConfig& c, const Ctx& x) { c.inflow.profile = x.value; }},
        {"amplitude", [](RunConfig& c, const Ctx& x) { c.inflow.amplitude = x.real(); }},
        {"seed", [](RunConfig& c, const Ctx& x) { c.inflow.seed = x.unsigned64(); }}}},
      {"solver",
       {{"tol_fp", [](RunConfig& c, const Ctx& x) { c.solver.tol_fp = x.real(); }},
        {"max_iter", [](RunConfig& c, const Ctx& x) { c.solver.max_iter = x.integer(); }},
        {"relaxation", [](RunConfig& c, const Ctx& x) { c.solver.relaxation = x.real(); }},
        {"k1", [](RunConfig& c, const Ctx& x) { c.solver.k1 = x.real(); }},
        {"ball_radius", [](RunConfig& c, const Ctx& x) { c.solver.ball_radius = x.real(); }},
        {"record_residuals", [](RunConfig& c, const Ctx& x) { c.solver.record_residuals = x.boolean(); }},
        {"c_min", [](RunConfig& c, const Ctx& x) { c.solver.transport.c_min = x.real(); }},
        {"length_max", [](RunConfig& c, const Ctx& x) { c.solver.transport.length_max = x.real(); }},
        {"substeps", [](RunConfig& c, const Ctx& x) { c.solver.transport.substeps = x.integer(); }},
        {"tol_div", [](RunConfig& c, const Ctx& x) { c.solver.divcurl.tol_div = x.real(); }},
        {"div_gate_h2", [](RunConfig& c, const Ctx& x) { c.solver.divcurl.div_gate_h2 = x.real(); }},
        {"tol_edge", [](RunConfig& c, const Ctx& x) { c.solver.divcurl.tol_edge = x.real(); }}}},
      {"output",
       {{"directory", [](RunConfig& c, const Ctx& x) { c.output.directory = x.value; }},
        {"csv", [](RunConfig& c, const Ctx& x) { c.output.csv = x.boolean(); }},
        {"vtk", [](RunConfig& c, const Ctx& x) { c.output.vtk = x.boolean(); }}}},
      {"probe",
       {{"amp_lo", [](RunConfig& c, const Ctx& x) { c.probe.amp_lo = x.real(); }},
        {"amp_hi", [](RunConfig& c, const Ctx& x) { c.probe.amp_hi = x.real(); }},
        {"threshold", [](RunConfig& c, const Ctx& x) { c.probe.threshold = x.real(); }},
        {"bisections", [](RunConfig& c, const Ctx& x) { c.probe.bisections = x.integer(); }},
        {"lipschitz_amplitude", [](RunConfig& c, const Ctx& x) { c.probe.lipschitz_amplitude = x.real(); }}}},
  };
  return s;
}

}  // namespace

void RunConfig::validate() const {
  std::ostringstream os;
  try {
    build_grid(geometry.radius, geometry.length, geometry.n_r, geometry.n_theta, geometry.n_z);
  } catch (const InvalidGrid& e) {
    os << e.what();
  }
  if (flux.profile != "uniform" && flux.profile != "bump") os << "flux.profile must be uniform or bump; ";
  if (!(flux.speed > 0.0)) os << "flux.speed must be > 0; ";
  if (!(flux.bump > -1.0)) os << "flux.bump must be > -1 (the outflow must stay positive); ";
  if (inflow.profile != "zero" && inflow.profile != "columnar" && inflow.profile != "random")
    os << "inflow.profile must be zero, columnar or random; ";
  if (!(inflow.amplitude >= 0.0)) os << "inflow.amplitude must be >= 0; ";
  if (output.directory.empty()) os << "output.directory must not be empty; ";
  if (!(probe.amp_lo > 0.0 && probe.amp_hi > probe.amp_lo)) os << "probe needs 0 < amp_lo < amp_hi; ";
  if (!(probe.threshold > 0.0 && probe.threshold < 1.0)) os << "probe.threshold must lie in (0, 1); ";
  if (probe.bisections < 1) os << "probe.bisections must be >= 1; ";
  if (!(probe.lipschitz_amplitude > 0.0)) os << "probe.lipschitz_amplitude must be > 0; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw ValidationError("config: " + msg.substr(0, msg.size() - 2));
  solver.check();
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  pt::ptree tree;
  {
    std::istringstream is(text);
    try {
      pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
      std::ostringstream os;
      os << source << ":" << e.line() << ": " << e.message();
      throw ParseError(os.str());
    }
  }
  RunConfig cfg;
  const auto& sch = schema();
  for (const auto& [section, body] : tree) {
    Ctx ctx{source, text, section, "", ""};
    if (body.empty() && !body.data().empty()) {
      ctx.section.clear();
      ctx.key = section;
      ctx.value = trim(body.data());
      ctx.fail("key '" + section + "' outside any section");
    }
    const auto sec = sch.find(section);
    if (sec == sch.end()) ctx.fail("unknown section '" + section + "'");
    for (const auto& [key, node] : body) {
      ctx.key = key;
      ctx.value = trim(node.data());
      const auto it = sec->second.find(key);
      if (it == sec->second.end()) ctx.fail("unknown key '" + key + "'");
      it->second(cfg, ctx);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  RunConfig cfg = parse_config(in, path);
  if (const char* dir = std::getenv("CYLFLOW_OUTPUT_DIR"); dir && *dir) cfg.output.directory = dir;
  return cfg;
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  auto b = [](bool x) { return x ? "true" : "false"; };
  os << "[geometry]\nradius = " << c.geometry.radius << "\nlength = " << c.geometry.length
     << "\nn_r = " << c.geometry.n_r << "\nn_theta = " << c.geometry.n_theta << "\nn_z = " << c.geometry.n_z
     << "\n\n[flux]\nprofile = " << c.flux.profile << "\nspeed = " << c.flux.speed << "\nbump = " << c.flux.bump
     << "\n\n[inflow]\nprofile = " << c.inflow.profile << "\namplitude = " << c.inflow.amplitude
     << "\nseed = " << c.inflow.seed << "\n\n[solver]\ntol_fp = " << c.solver.tol_fp
     << "\nmax_iter = " << c.solver.max_iter << "\nrelaxation = " << c.solver.relaxation << (std::isfinite(c.solver.k1) ? "\nk1 = " : "\n; k1 not calibrated: ")
     << c.solver.k1 << "\nball_radius = " << c.solver.ball_radius << "\nrecord_residuals = " << b(c.solver.record_residuals)
     << "\nc_min = " << c.solver.transport.c_min << "\nlength_max = " << c.solver.transport.length_max
     << "\nsubsteps = " << c.solver.transport.substeps << "\ntol_div = " << c.solver.divcurl.tol_div
     << "\ndiv_gate_h2 = " << c.solver.divcurl.div_gate_h2 << "\ntol_edge = " << c.solver.divcurl.tol_edge
     << "\n\n[output]\ndirectory = " << c.output.directory << "\ncsv = " << b(c.output.csv)
     << "\nvtk = " << b(c.output.vtk) << "\n\n[probe]\namp_lo = " << c.probe.amp_lo
     << "\namp_hi = " << c.probe.amp_hi << "\nthreshold = " << c.probe.threshold
     << "\nbisections = " << c.probe.bisections << "\nlipschitz_amplitude = " << c.probe.lipschitz_amplitude
     << "\n";
  return os.str();
}

GridPtr make_grid(const RunConfig& cfg) {
  const GeometryConfig& g = cfg.geometry;
  return build_grid(g.radius, g.length, g.n_r, g.n_theta, g.n_z);
}

FluxData make_flux(const RunConfig& cfg, const GridPtr& grid) {
  if (cfg.flux.profile == "bump") return FluxData::bump(grid, cfg.flux.speed, cfg.flux.bump);
  return FluxData::uniform(grid, cfg.flux.speed);
}

InflowData make_inflow(const RunConfig& cfg, const GridPtr& grid, double amplitude) {
  if (cfg.inflow.profile == "columnar") return columnar_swirl_data(grid, amplitude);
  if (cfg.inflow.profile == "random") return random_inflow_data(grid, amplitude, cfg.inflow.seed);
  return InflowData::zero(grid);
}

}  // namespace cylflow
