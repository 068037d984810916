#include "cylflow/field.hpp"

#include <cmath>
#include <string>

#include "cylflow/error.hpp"

namespace cylflow {

namespace {

bool finite_all(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where) {
  if (!a || !b) throw GridMismatch(std::string(where) + ": field without grid");
  if (a != b && !a->same_shape(*b)) throw GridMismatch(std::string(where) + ": grids differ");
}

void require_same_layout(const VectorField& a, const VectorField& b, const char* where) {
  require_same_grid(a.grid(), b.grid(), where);
  if (a.frame() != b.frame()) throw GridMismatch(std::string(where) + ": frames differ");
}

// ---------------------------------------------------------------- ScalarField

ScalarField::ScalarField(GridPtr grid, double value)
    : grid_(std::move(grid)), v_(grid_->size(), value) {}

ScalarField ScalarField::from_function(GridPtr grid,
                                       const std::function<double(double, double, double)>& f) {
  ScalarField s(grid);
  const CylGrid& g = *grid;
  for (int k = 0; k < g.n_z(); ++k)
    for (int i = 0; i < g.n_r(); ++i)
      for (int j = 0; j < g.n_theta(); ++j) s.at(i, j, k) = f(g.r(i), g.theta(j), g.z(k));
  return s;
}

bool ScalarField::all_finite() const { return finite_all(v_); }

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  for (std::size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  for (std::size_t n = 0; n < v_.size(); ++n) v_[n] -= o.v_[n];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (double& x : v_) x *= a;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField b) { return b *= a; }

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(GridPtr grid, Frame frame)
    : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid)}, frame_(frame) {}

VectorField::VectorField(ScalarField c0, ScalarField c1, ScalarField c2, Frame frame)
    : c_{std::move(c0), std::move(c1), std::move(c2)}, frame_(frame) {
  require_same_grid(c_[0].grid(), c_[1].grid(), "VectorField");
  require_same_grid(c_[0].grid(), c_[2].grid(), "VectorField");
}

VectorField VectorField::from_function(GridPtr grid, Frame frame,
                                       const std::function<Vec3(double, double, double)>& f) {
  VectorField v(grid, frame);
  const CylGrid& g = *grid;
  for (int k = 0; k < g.n_z(); ++k)
    for (int i = 0; i < g.n_r(); ++i)
      for (int j = 0; j < g.n_theta(); ++j) {
        v.set(g.index(i, j, k), f(g.r(i), g.theta(j), g.z(k)));
      }
  return v;
}

bool VectorField::all_finite() const {
  return c_[0].all_finite() && c_[1].all_finite() && c_[2].all_finite();
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_layout(*this, o, "VectorField +=");
  for (int a = 0; a < 3; ++a) comp(a) += o.comp(a);
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_layout(*this, o, "VectorField -=");
  for (int a = 0; a < 3; ++a) comp(a) -= o.comp(a);
  return *this;
}

VectorField& VectorField::operator*=(double a) {
  for (auto& c : c_) c *= a;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double a, VectorField b) { return b *= a; }

namespace {

// sign = +1 rotates cylindrical -> Cartesian, -1 the reverse.
VectorField rotate(const VectorField& f, double sign, Frame out_frame) {
  const CylGrid& g = *f.grid();
  VectorField out(f.grid(), out_frame);
  std::vector<double> cs(static_cast<std::size_t>(g.n_theta())), sn(cs.size());
  for (int j = 0; j < g.n_theta(); ++j) {
    cs[static_cast<std::size_t>(j)] = std::cos(g.theta(j));
    sn[static_cast<std::size_t>(j)] = std::sin(g.theta(j));
  }
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const std::size_t j = idx % static_cast<std::size_t>(g.n_theta());
    const double a = f.comp(0)[idx];
    const double b = f.comp(1)[idx];
    out.comp(0)[idx] = cs[j] * a - sign * sn[j] * b;
    out.comp(1)[idx] = sign * sn[j] * a + cs[j] * b;
    out.comp(2)[idx] = f.comp(2)[idx];
  }
  return out;
}

}  // namespace

VectorField to_cartesian(const VectorField& f) {
  if (f.frame() == Frame::Cartesian) return f;
  return rotate(f, 1.0, Frame::Cartesian);
}

VectorField to_cylindrical(const VectorField& f) {
  if (f.frame() == Frame::Cylindrical) return f;
  return rotate(f, -1.0, Frame::Cylindrical);
}

// ---------------------------------------------------------------- CapField

CapField::CapField(GridPtr grid, double value)
    : grid_(std::move(grid)),
      v_(static_cast<std::size_t>(grid_->n_r()) * grid_->n_theta(), value) {}

CapField CapField::from_function(GridPtr grid, const std::function<double(double, double)>& f) {
  CapField c(grid);
  const CylGrid& g = *grid;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) c.at(i, j) = f(g.r(i), g.theta(j));
  return c;
}

CapField CapField::restrict(const ScalarField& s, int k) {
  CapField c(s.grid());
  const std::size_t off = s.grid()->ring_offset(0, k);
  for (std::size_t n = 0; n < c.size(); ++n) c.v_[n] = s[off + n];
  return c;
}

ScalarField CapField::extrude() const {
  ScalarField s(grid_);
  for (int k = 0; k < grid_->n_z(); ++k) {
    const std::size_t off = grid_->ring_offset(0, k);
    for (std::size_t n = 0; n < v_.size(); ++n) s[off + n] = v_[n];
  }
  return s;
}

CapField& CapField::operator+=(const CapField& o) {
  require_same_grid(grid_, o.grid_, "CapField +=");
  for (std::size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
  return *this;
}

CapField& CapField::operator-=(const CapField& o) {
  require_same_grid(grid_, o.grid_, "CapField -=");
  for (std::size_t n = 0; n < v_.size(); ++n) v_[n] -= o.v_[n];
  return *this;
}

CapField& CapField::operator*=(double a) {
  for (double& x : v_) x *= a;
  return *this;
}

CapField operator+(CapField a, const CapField& b) { return a += b; }
CapField operator-(CapField a, const CapField& b) { return a -= b; }
CapField operator*(double a, CapField b) { return b *= a; }

CapVectorField CapVectorField::restrict(const VectorField& cartesian, int k) {
  if (cartesian.frame() != Frame::Cartesian)
    throw GridMismatch("CapVectorField::restrict expects a Cartesian field");
  CapVectorField out;
  for (int a = 0; a < 3; ++a) out.c[static_cast<std::size_t>(a)] = CapField::restrict(cartesian.comp(a), k);
  return out;
}

}  // namespace cylflow
