#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cylflow/field.hpp"

namespace cylflow {

enum class TraceDirection { Forward, Backward };

enum class TraceEnd { Inflow, Outflow };

struct StreamlineSample {
  Point x;
  double s = 0.0;  // arclength from the seed
  double t = 0.0;  // elapsed |time| from the seed
};

struct Streamline {
  Point seed;
  TraceDirection direction = TraceDirection::Backward;
  std::vector<StreamlineSample> samples;
  TraceEnd end = TraceEnd::Inflow;
  double length = 0.0;
  int mantle_clamps = 0;  // steps projected back onto r = R
};

struct TraceOptions {
  double c_min = 0.0;       // <= 0: minimum nodal axial velocity
  double length_max = 0.0;  // <= 0: 10 L (1 + max|v| / c_min)
  double tol = 1e-9;        // local error per unit length
};

/// Integral curve of v (any frame) from `seed` until it hits a cap, by
/// adaptive RK4 with step doubling. The cap crossing is located by bisection
/// to 1e-10 L; excursions through the mantle are projected back onto it.
/// Throws StagnationDetected when the axial velocity drops below c_min / 2
/// (or is not positive at some node), LengthExceeded past length_max.
Streamline trace(const VectorField& v, const Point& seed, TraceDirection direction,
                 const TraceOptions& opt = {});

struct TransportOptions {
  double c_min = 0.0;       // <= 0: minimum nodal axial velocity
  double length_max = 0.0;  // <= 0: 10 L (1 + max|v| / c_min)
  int substeps = 2;         // RK4 steps per axial grid spacing
  bool estimate_error = true;
};

/// Solution of (v . grad) f = (f . grad) v with f = f0 on the inflow cap.
struct TransportField {
  VectorField f;        // Cartesian
  ScalarField length;   // streamline length from the inflow cap to each node
  ScalarField time;     // travel time from the inflow cap
  ScalarField error;    // accumulated RK4 error estimate (position, |.|)
  double max_length = 0.0;
  double max_error = 0.0;
  double min_axial = 0.0;  // smallest axial speed met along any step
};

/// Characteristics marched plane by plane: each node of plane k is traced
/// back to plane k - 1, where the previous solution is interpolated, and
/// multiplied by the propagator of df/dt = J_v f along that segment. The
/// axial coordinate is the integration variable (dz/dt = v_z > 0). Inflow
/// nodes keep f0 exactly.
TransportField solve_transport(const VectorField& v, const CapVectorField& f0,
                               const TransportOptions& opt = {});

/// Pure advection (v . grad) s = 0 with s = s0 on the inflow cap.
ScalarField transport_scalar(const VectorField& v, const CapField& s0, const TransportOptions& opt = {});

struct TransportEstimates {
  double ratio_l2 = 0.0;  // ||f||_L2 / ||f0||_L2
  double ratio_h1 = 0.0;  // ||f||_H1 / ||f0||_H1
  std::optional<double> difference_ratio;  // ||f2 - f1|| / (||f0|| ||v2 - v1||_H1)
};

struct TransportPair {
  const VectorField* f;
  const VectorField* v;
};

/// Measured stability constants; 0/0 ratios are reported as 0.
TransportEstimates transport_estimates(const VectorField& f, const CapVectorField& f0,
                                       std::optional<TransportPair> first = std::nullopt,
                                       std::optional<TransportPair> second = std::nullopt);

/// Default streamline length bound 10 L (1 + max|v| / c_min).
double default_length_max(const VectorField& v, double c_min);

/// Minimum axial velocity over all nodes.
double min_axial(const VectorField& v);

}  // namespace cylflow
