#include "cylflow/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cylflow/error.hpp"

namespace cylflow {

Point Point::from_cylindrical(double r, double theta, double z) {
  return {r * std::cos(theta), r * std::sin(theta), z};
}

double Point::radius() const { return std::hypot(x, y); }

double Point::angle() const { return std::atan2(y, x); }

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Interior: return "interior";
    case BoundaryTag::Inflow: return "inflow";
    case BoundaryTag::Outflow: return "outflow";
    case BoundaryTag::Mantle: return "mantle";
    case BoundaryTag::EdgeMinus: return "edge_minus";
    case BoundaryTag::EdgePlus: return "edge_plus";
  }
  return "unknown";
}

CylGrid::CylGrid(double radius, double length, int n_r, int n_theta, int n_z)
    : radius_(radius),
      length_(length),
      n_r_(n_r),
      n_theta_(n_theta),
      n_z_(n_z),
      dr_(radius / (n_r - 1)),
      dtheta_(2.0 * std::numbers::pi / n_theta),
      dz_(length / (n_z - 1)),
      radial_w_(static_cast<std::size_t>(n_r)),
      axial_w_(static_cast<std::size_t>(n_z)) {
  for (int i = 0; i < n_r; ++i) {
    double w = r(i) * dr_;
    if (i == n_r - 1) w *= 0.5;
    radial_w_[static_cast<std::size_t>(i)] = w;
  }
  for (int k = 0; k < n_z; ++k) {
    axial_w_[static_cast<std::size_t>(k)] = (k == 0 || k == n_z - 1) ? 0.5 * dz_ : dz_;
  }
}

NodeIndex CylGrid::unravel(std::size_t idx) const {
  NodeIndex n;
  n.j = static_cast<int>(idx % n_theta_);
  std::size_t rest = idx / n_theta_;
  n.i = static_cast<int>(rest % n_r_);
  n.k = static_cast<int>(rest / n_r_);
  return n;
}

BoundaryTag CylGrid::tag(int i, int k) const {
  const bool mantle = (i == n_r_ - 1);
  if (k == 0) return mantle ? BoundaryTag::EdgeMinus : BoundaryTag::Inflow;
  if (k == n_z_ - 1) return mantle ? BoundaryTag::EdgePlus : BoundaryTag::Outflow;
  return mantle ? BoundaryTag::Mantle : BoundaryTag::Interior;
}

BoundaryTag CylGrid::tag(std::size_t idx) const {
  NodeIndex n = unravel(idx);
  return tag(n.i, n.k);
}

Point CylGrid::node(int i, int j, int k) const {
  return Point::from_cylindrical(r(i), theta(j), z(k));
}

Point CylGrid::node(std::size_t idx) const {
  NodeIndex n = unravel(idx);
  return node(n.i, n.j, n.k);
}

bool CylGrid::same_shape(const CylGrid& o) const {
  return n_r_ == o.n_r_ && n_theta_ == o.n_theta_ && n_z_ == o.n_z_ && radius_ == o.radius_ &&
         length_ == o.length_;
}

GridPtr build_grid(double radius, double length, int n_r, int n_theta, int n_z) {
  std::ostringstream why;
  if (!(radius > 0.0) || !std::isfinite(radius)) why << "radius must be positive; ";
  if (!(length > 0.0) || !std::isfinite(length)) why << "length must be positive; ";
  if (n_r < 4) why << "n_r must be >= 4; ";
  if (n_theta < 4) why << "n_theta must be >= 4; ";
  if (n_theta % 2 != 0) why << "n_theta must be even; ";
  if (n_z < 4) why << "n_z must be >= 4; ";
  if (!why.str().empty()) throw InvalidGrid("invalid grid: " + why.str());
  return std::make_shared<const CylGrid>(radius, length, n_r, n_theta, n_z);
}

}  // namespace cylflow
