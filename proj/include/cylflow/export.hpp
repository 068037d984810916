#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "cylflow/euler_solver.hpp"

namespace cylflow {

inline constexpr const char* kFieldCsvHeader = "r,theta,z,vr,vtheta,vz,p,fr,ftheta,fz";
inline constexpr const char* kHistoryCsvHeader = "iter,update_norm,ratio,momentum_res,div_res";

/// One node per row in grid index order, cylindrical components, 17
/// significant digits. v and f may be in either frame.
void write_fields_csv(std::ostream& out, const VectorField& v, const ScalarField& p, const VectorField& f);
void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history);

/// Legacy ASCII STRUCTURED_GRID. The azimuthal seam is closed by repeating
/// theta = 0, so the point dimensions are (n_theta + 1, n_r, n_z). Point data:
/// velocity and vorticity (Cartesian) and pressure.
void write_vtk(std::ostream& out, const VectorField& v, const ScalarField& p, const VectorField& f);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV with one header line. Throws ParseError.
CsvTable read_csv(std::istream& in);

/// File-level wrappers; throw IoError when the file cannot be written or read.
void write_fields_csv(const std::string& path, const FlowState& state);
void write_history_csv(const std::string& path, const std::vector<IterationRecord>& history);
void write_vtk(const std::string& path, const FlowState& state);
CsvTable read_csv(const std::string& path);

}  // namespace cylflow
