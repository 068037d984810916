#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cylflow/grid.hpp"

namespace cylflow {

/// Real value per grid node.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double value = 0.0);

  static ScalarField from_function(GridPtr grid,
                                   const std::function<double(double r, double theta, double z)>& f);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t idx) { return v_[idx]; }
  double operator[](std::size_t idx) const { return v_[idx]; }
  double& at(int i, int j, int k) { return v_[grid_->index(i, j, k)]; }
  double at(int i, int j, int k) const { return v_[grid_->index(i, j, k)]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }
  const double* data() const { return v_.data(); }

  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);

 private:
  GridPtr grid_;
  std::vector<double> v_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField b);

enum class Frame { Cylindrical, Cartesian };

/// Three components per node, either (r, theta, z) or (x, y, z).
class VectorField {
 public:
  VectorField() = default;
  VectorField(GridPtr grid, Frame frame);
  VectorField(ScalarField c0, ScalarField c1, ScalarField c2, Frame frame);

  static VectorField from_function(GridPtr grid, Frame frame,
                                   const std::function<Vec3(double r, double theta, double z)>& f);

  const GridPtr& grid() const { return c_[0].grid(); }
  Frame frame() const { return frame_; }
  std::size_t size() const { return c_[0].size(); }

  ScalarField& comp(int a) { return c_[static_cast<std::size_t>(a)]; }
  const ScalarField& comp(int a) const { return c_[static_cast<std::size_t>(a)]; }
  Vec3 at(std::size_t idx) const { return {c_[0][idx], c_[1][idx], c_[2][idx]}; }
  void set(std::size_t idx, const Vec3& v) {
    c_[0][idx] = v[0];
    c_[1][idx] = v[1];
    c_[2][idx] = v[2];
  }

  bool all_finite() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);

 private:
  std::array<ScalarField, 3> c_;
  Frame frame_ = Frame::Cylindrical;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double a, VectorField b);

VectorField to_cartesian(const VectorField& f);
VectorField to_cylindrical(const VectorField& f);

/// Throws GridMismatch unless both fields live on grids of identical shape.
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where);
/// Throws GridMismatch if the frames differ (after checking grids).
void require_same_layout(const VectorField& a, const VectorField& b, const char* where);

/// Values on one cap plane (n_r * n_theta nodes, same ring order as the grid).
class CapField {
 public:
  CapField() = default;
  explicit CapField(GridPtr grid, double value = 0.0);

  static CapField from_function(GridPtr grid, const std::function<double(double r, double theta)>& f);
  /// Restriction of a volume field to plane k.
  static CapField restrict(const ScalarField& s, int k);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t idx) { return v_[idx]; }
  double operator[](std::size_t idx) const { return v_[idx]; }
  double& at(int i, int j) { return v_[static_cast<std::size_t>(j + grid_->n_theta() * i)]; }
  double at(int i, int j) const { return v_[static_cast<std::size_t>(j + grid_->n_theta() * i)]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  /// Field on the full grid that repeats this cap on every plane.
  ScalarField extrude() const;

  CapField& operator+=(const CapField& o);
  CapField& operator-=(const CapField& o);
  CapField& operator*=(double a);

 private:
  GridPtr grid_;
  std::vector<double> v_;
};

CapField operator+(CapField a, const CapField& b);
CapField operator-(CapField a, const CapField& b);
CapField operator*(double a, CapField b);

/// Cartesian vector values on one cap plane.
struct CapVectorField {
  std::array<CapField, 3> c;
  const GridPtr& grid() const { return c[0].grid(); }
  Vec3 at(std::size_t idx) const { return {c[0][idx], c[1][idx], c[2][idx]}; }
  static CapVectorField restrict(const VectorField& cartesian, int k);
};

}  // namespace cylflow
