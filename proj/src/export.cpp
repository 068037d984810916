#include "cylflow/export.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cylflow/error.hpp"

namespace cylflow {

namespace {

// %.17g round-trips every double; NaN and infinities are spelled out.
void put(std::ostream& out, double x) {
  char buf[32];
  if (std::isnan(x)) {
    out << "nan";
    return;
  }
  if (std::isinf(x)) {
    out << (x > 0 ? "inf" : "-inf");
    return;
  }
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  out.write(buf, n);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace

void write_fields_csv(std::ostream& out, const VectorField& v_in, const ScalarField& p, const VectorField& f_in) {
  require_same_grid(v_in.grid(), p.grid(), "write_fields_csv");
  require_same_grid(v_in.grid(), f_in.grid(), "write_fields_csv");
  const VectorField v = to_cylindrical(v_in), f = to_cylindrical(f_in);
  const CylGrid& g = *v.grid();
  out << kFieldCsvHeader << '\n';
  for (std::size_t n = 0; n < g.size(); ++n) {
    const NodeIndex id = g.unravel(n);
    const double row[10] = {g.r(id.i),    g.theta(id.j), g.z(id.k),    v.comp(0)[n], v.comp(1)[n],
                            v.comp(2)[n], p[n],          f.comp(0)[n], f.comp(1)[n], f.comp(2)[n]};
    for (int c = 0; c < 10; ++c) {
      if (c) out << ',';
      put(out, row[c]);
    }
    out << '\n';
  }
}

void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history) {
  out << kHistoryCsvHeader << '\n';
  for (const IterationRecord& r : history) {
    out << r.iter;
    for (double x : {r.update_norm, r.ratio, r.momentum_res, r.div_res}) {
      out << ',';
      put(out, x);
    }
    out << '\n';
  }
}

void write_vtk(std::ostream& out, const VectorField& v_in, const ScalarField& p, const VectorField& f_in) {
  require_same_grid(v_in.grid(), p.grid(), "write_vtk");
  require_same_grid(v_in.grid(), f_in.grid(), "write_vtk");
  const VectorField v = to_cartesian(v_in), f = to_cartesian(f_in);
  const CylGrid& g = *v.grid();
  const int nt = g.n_theta(), nr = g.n_r(), nz = g.n_z();
  const std::size_t npts = static_cast<std::size_t>(nt + 1) * nr * nz;
  auto each = [&](auto&& fn) {
    for (int k = 0; k < nz; ++k)
      for (int i = 0; i < nr; ++i)
        for (int j = 0; j <= nt; ++j) fn(i, j % nt, j, k);
  };
  out << "# vtk DataFile Version 3.0\ncylflow steady Euler solution\nASCII\nDATASET STRUCTURED_GRID\n"
      << "DIMENSIONS " << nt + 1 << ' ' << nr << ' ' << nz << "\nPOINTS " << npts << " double\n";
  each([&](int i, int, int jj, int k) {
    const double t = 2.0 * std::numbers::pi * jj / nt;
    put(out, g.r(i) * std::cos(t));
    out << ' ';
    put(out, g.r(i) * std::sin(t));
    out << ' ';
    put(out, g.z(k));
    out << '\n';
  });
  auto vectors = [&](const char* name, const VectorField& w) {
    out << "VECTORS " << name << " double\n";
    each([&](int i, int j, int, int k) {
      const std::size_t n = g.index(i, j, k);
      for (int a = 0; a < 3; ++a) {
        if (a) out << ' ';
        put(out, w.comp(a)[n]);
      }
      out << '\n';
    });
  };
  out << "POINT_DATA " << npts << '\n';
  vectors("velocity", v);
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  each([&](int i, int j, int, int k) {
    put(out, p[g.index(i, j, k)]);
    out << '\n';
  });
  vectors("vorticity", f);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: missing header");
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  }
  for (int ln = 2; std::getline(in, line); ++ln) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t a = 0;
    while (true) {
      const std::size_t b = std::min(line.find(',', a), line.size());
      const std::string cell = line.substr(a, b - a);
      double x = 0.0;
      if (cell == "nan") {
        x = NAN;
      } else if (cell == "inf" || cell == "-inf") {
        x = cell[0] == '-' ? -INFINITY : INFINITY;
      } else {
        const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
        if (ec != std::errc() || p != cell.data() + cell.size())
          throw ParseError("csv line " + std::to_string(ln) + ": bad number '" + cell + "'");
      }
      row.push_back(x);
      if (b == line.size()) break;
      a = b + 1;
    }
    if (row.size() != t.header.size())
      throw ParseError("csv line " + std::to_string(ln) + ": expected " + std::to_string(t.header.size()) +
                       " columns, got " + std::to_string(row.size()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_fields_csv(const std::string& path, const FlowState& s) {
  std::ofstream out = open_out(path);
  write_fields_csv(out, s.v, s.p, s.f);
  finish(out, path);
}

void write_history_csv(const std::string& path, const std::vector<IterationRecord>& history) {
  std::ofstream out = open_out(path);
  write_history_csv(out, history);
  finish(out, path);
}

void write_vtk(const std::string& path, const FlowState& s) {
  std::ofstream out = open_out(path);
  write_vtk(out, s.v, s.p, s.f);
  finish(out, path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_csv(in);
}

}  // namespace cylflow
