#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace cylflow {

using Vec3 = std::array<double, 3>;

/// Cartesian point (x, y, z); the cylinder axis is the z axis.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Point from_cylindrical(double r, double theta, double z);
  double radius() const;
  double angle() const;
};

enum class BoundaryTag : std::uint8_t {
  Interior,
  Inflow,     // z = 0, r < R
  Outflow,    // z = L, r < R
  Mantle,     // r = R, 0 < z < L
  EdgeMinus,  // r = R, z = 0
  EdgePlus,   // r = R, z = L
};

const char* to_string(BoundaryTag tag);

struct NodeIndex {
  int i = 0;  // radial
  int j = 0;  // azimuthal
  int k = 0;  // axial
};

/// Structured grid on {r < R} x (0, L). Radial nodes run from the axis
/// (r = 0, duplicated once per azimuthal index) to the mantle r = R; axial
/// nodes include both caps; the azimuthal direction is periodic.
///
/// Node storage is ring-contiguous: index(i, j, k) = j + n_theta * (i + n_r * k).
class CylGrid {
 public:
  CylGrid(double radius, double length, int n_r, int n_theta, int n_z);

  double radius() const { return radius_; }
  double length() const { return length_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  int n_z() const { return n_z_; }
  std::size_t size() const { return static_cast<std::size_t>(n_r_) * n_theta_ * n_z_; }
  /// Number of azimuthal Fourier modes kept (0 .. n_theta/2).
  int n_modes() const { return n_theta_ / 2 + 1; }

  double dr() const { return dr_; }
  double dtheta() const { return dtheta_; }
  double dz() const { return dz_; }

  double r(int i) const { return i * dr_; }
  double theta(int j) const { return j * dtheta_; }
  double z(int k) const { return k * dz_; }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(j) +
           static_cast<std::size_t>(n_theta_) * (static_cast<std::size_t>(i) +
                                                 static_cast<std::size_t>(n_r_) * k);
  }
  /// Index of the first node of ring (i, k); the ring's n_theta nodes are contiguous.
  std::size_t ring_offset(int i, int k) const { return index(i, 0, k); }
  NodeIndex unravel(std::size_t idx) const;
  int wrap_theta(int j) const { return ((j % n_theta_) + n_theta_) % n_theta_; }

  BoundaryTag tag(int i, int k) const;
  BoundaryTag tag(std::size_t idx) const;
  bool is_axis(int i) const { return i == 0; }

  Point node(int i, int j, int k) const;
  Point node(std::size_t idx) const;

  /// Trapezoidal quadrature weights. The volume weight of node (i, j, k) is
  /// radial_weight(i) * axial_weight(k) * dtheta(); these integrate
  /// polynomials of degree one in r (times the Jacobian r) exactly.
  double radial_weight(int i) const { return radial_w_[static_cast<std::size_t>(i)]; }
  double axial_weight(int k) const { return axial_w_[static_cast<std::size_t>(k)]; }
  double volume_weight(int i, int k) const { return radial_w_[i] * axial_w_[k] * dtheta_; }
  double cap_area_weight(int i) const { return radial_w_[i] * dtheta_; }
  double mantle_area_weight(int k) const { return radius_ * axial_w_[k] * dtheta_; }

  bool same_shape(const CylGrid& other) const;

 private:
  double radius_;
  double length_;
  int n_r_;
  int n_theta_;
  int n_z_;
  double dr_;
  double dtheta_;
  double dz_;
  std::vector<double> radial_w_;
  std::vector<double> axial_w_;
};

using GridPtr = std::shared_ptr<const CylGrid>;

/// Validates parameters and builds a shared grid. Throws InvalidGrid.
GridPtr build_grid(double radius, double length, int n_r, int n_theta, int n_z);

}  // namespace cylflow
