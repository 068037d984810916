#include "cylflow/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cylflow/error.hpp"
#include "cylflow/interpolate.hpp"
#include "cylflow/norms.hpp"
#include "cylflow/operators.hpp"

namespace cylflow {

double min_axial(const VectorField& v) {
  const ScalarField& vz = v.comp(2);  // z is the same in both frames
  double m = vz[0];
  for (double x : vz.values()) m = std::min(m, x);
  return m;
}

double default_length_max(const VectorField& v, double c_min) {
  double vmax = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const Vec3 a = v.at(n);
    vmax = std::max(vmax, std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]));
  }
  return 10.0 * v.grid()->length() * (1.0 + vmax / c_min);
}

namespace {

double resolve_c_min(const VectorField& v, double requested, const char* where) {
  const double m = min_axial(v);
  if (!(m > 0.0)) {
    std::ostringstream os;
    os << where << ": axial velocity " << m
       << " is not positive at every node; streamlines may stagnate or close (positive-speed hypothesis)";
    throw StagnationDetected(os.str());
  }
  return requested > 0.0 ? requested : m;
}

[[noreturn]] void stagnation(const char* where, double vz, double c_min, double r, double z) {
  std::ostringstream os;
  os << where << ": axial speed " << vz << " below c_min/2 = " << 0.5 * c_min << " at r = " << r << ", z = " << z
     << " (positive-speed hypothesis)";
  throw StagnationDetected(os.str());
}

[[noreturn]] void too_long(const char* where, double len, double lmax) {
  std::ostringstream os;
  os << where << ": streamline length " << len << " exceeds L_max = " << lmax
     << "; possible stagnation or closed integral curve (finite-length hypothesis)";
  throw LengthExceeded(os.str());
}

// Radial projection onto the closed disc r <= R. Returns true if it moved.
bool clamp_radius(double& x, double& y, double R) {
  const double r = std::hypot(x, y);
  if (r <= R) return false;
  x *= R / r;
  y *= R / r;
  return true;
}

// Backward march over one axial cell, z-parameterized. State layout:
// x, y, length, time, then (optionally) the 3x3 propagator G row-major.
class Segment {
 public:
  Segment(const CylGrid& g, const Interpolator& vel, bool with_g, double c_min, const char* where)
      : g_(g), vel_(vel), with_g_(with_g), c_min_(c_min), where_(where) {}

  int size() const { return with_g_ ? 13 : 4; }
  double min_axial() const { return min_axial_; }

  // Characteristics through mantle nodes stay on the mantle surface.
  void set_on_mantle(bool on) { on_mantle_ = on; }

  void project(double& x, double& y) const {
    const double R = g_.radius();
    if (on_mantle_) {
      const double r = std::hypot(x, y);
      x *= R / r;
      y *= R / r;
    } else {
      clamp_radius(x, y, R);
    }
  }

  void rhs(double z, const double* y, double* dy) {
    double x0 = y[0], y0 = y[1];
    project(x0, y0);
    double q[12];
    vel_.eval(Point{x0, y0, z}, q);
    const double vz = q[2];
    if (!(vz >= 0.5 * c_min_)) stagnation(where_, vz, c_min_, std::hypot(x0, y0), z);
    min_axial_ = std::min(min_axial_, vz);
    const double iv = 1.0 / vz;
    dy[0] = q[0] * iv;
    dy[1] = q[1] * iv;
    dy[2] = std::sqrt(q[0] * q[0] + q[1] * q[1] + vz * vz) * iv;
    dy[3] = iv;
    if (!with_g_) return;
    // dG/dz = -G J / v_z
    const double* J = q + 3;
    const double* G = y + 4;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += G[3 * a + c] * J[3 * c + b];
        dy[4 + 3 * a + b] = -s * iv;
      }
  }

  // Classic RK4 from z with step h (negative: backward).
  void step(double z, double h, double* y) {
    const int n = size();
    double k1[13], k2[13], k3[13], k4[13], t[13];
    rhs(z, y, k1);
    for (int a = 0; a < n; ++a) t[a] = y[a] + 0.5 * h * k1[a];
    rhs(z + 0.5 * h, t, k2);
    for (int a = 0; a < n; ++a) t[a] = y[a] + 0.5 * h * k2[a];
    rhs(z + 0.5 * h, t, k3);
    for (int a = 0; a < n; ++a) t[a] = y[a] + h * k3[a];
    rhs(z + h, t, k4);
    for (int a = 0; a < n; ++a) y[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    project(y[0], y[1]);
  }

 private:
  const CylGrid& g_;
  const Interpolator& vel_;
  bool with_g_;
  double c_min_;
  const char* where_;
  bool on_mantle_ = false;
  double min_axial_ = INFINITY;
};

struct MarchResult {
  std::vector<std::vector<double>> out;  // per carried component, full grid
  double min_axial = INFINITY;
  double max_length = 0.0;
  double max_error = 0.0;
};

// Carries `carried` cap components (plane 0 values given) from plane to
// plane. With the propagator the first three carried components are the
// Cartesian vector f; the last three are length, time and error, appended
// here.
MarchResult march(const VectorField& v, const std::vector<const CapField*>& inflow, bool with_g,
                  const TransportOptions& opt, const char* where) {
  const GridPtr& gp = v.grid();
  const CylGrid& g = *gp;
  for (const CapField* c : inflow) require_same_grid(gp, c->grid(), where);
  if (opt.substeps < 1) throw ValidationError(std::string(where) + ": substeps must be >= 1");
  const double c_min = resolve_c_min(v, opt.c_min, where);
  const double lmax = opt.length_max > 0.0 ? opt.length_max : default_length_max(v, c_min);

  const VectorField vc = to_cartesian(v);
  std::vector<const ScalarField*> comps = {&vc.comp(0), &vc.comp(1), &vc.comp(2)};
  TensorField J;
  if (with_g) {
    J = cartesian_gradient(vc);
    for (const ScalarField& c : J.c) comps.push_back(&c);
  }
  const Interpolator vel(comps);
  Segment seg(g, vel, with_g, c_min, where);

  const int n_in = static_cast<int>(inflow.size());
  const int n_car = n_in + 3;
  const std::size_t plane = static_cast<std::size_t>(g.n_r()) * g.n_theta();
  MarchResult res;
  res.out.assign(static_cast<std::size_t>(n_car), std::vector<double>(g.size(), 0.0));

  std::vector<CapField> prev(static_cast<std::size_t>(n_car), CapField(gp));
  for (int a = 0; a < n_in; ++a) {
    prev[static_cast<std::size_t>(a)] = *inflow[static_cast<std::size_t>(a)];
    std::copy(prev[static_cast<std::size_t>(a)].values().begin(), prev[static_cast<std::size_t>(a)].values().end(),
              res.out[static_cast<std::size_t>(a)].begin());
  }

  const int ns = opt.substeps;
  const double dz = g.dz();
  std::vector<double> vals(static_cast<std::size_t>(n_car));
  for (int k = 1; k < g.n_z(); ++k) {
    std::vector<const CapField*> pp;
    for (const CapField& c : prev) pp.push_back(&c);
    const Interpolator cap(pp);
    std::vector<CapField> next(static_cast<std::size_t>(n_car), CapField(gp));
    const double zk = g.z(k);
    for (int i = 0; i < g.n_r(); ++i) {
      seg.set_on_mantle(i == g.n_r() - 1);
      for (int j = 0; j < g.n_theta(); ++j) {
        const std::size_t local = static_cast<std::size_t>(j + g.n_theta() * i);
        const Point p0 = Point::from_cylindrical(g.r(i), g.theta(j), zk);
        double y[13] = {p0.x, p0.y, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
        double err = 0.0;
        if (opt.estimate_error) {
          double y1[13];
          std::copy(y, y + 13, y1);
          seg.step(zk, -dz, y1);
          for (int s = 0; s < ns; ++s) seg.step(zk - s * dz / ns, -dz / ns, y);
          const double f = ns > 1 ? 1.0 / (std::pow(static_cast<double>(ns), 4) - 1.0) : 1.0;
          err = std::hypot(y[0] - y1[0], y[1] - y1[1]) * f;
        } else {
          for (int s = 0; s < ns; ++s) seg.step(zk - s * dz / ns, -dz / ns, y);
        }
        cap.eval(Point{y[0], y[1], 0.0}, vals.data());
        if (with_g) {
          const double* G = y + 4;
          for (int a = 0; a < 3; ++a)
            next[static_cast<std::size_t>(a)][local] = G[3 * a] * vals[0] + G[3 * a + 1] * vals[1] + G[3 * a + 2] * vals[2];
          for (int a = 3; a < n_in; ++a) next[static_cast<std::size_t>(a)][local] = vals[static_cast<std::size_t>(a)];
        } else {
          for (int a = 0; a < n_in; ++a) next[static_cast<std::size_t>(a)][local] = vals[static_cast<std::size_t>(a)];
        }
        // the segment ran backward in z, so its length and time came out negative
        const double len = vals[static_cast<std::size_t>(n_in)] - y[2];
        if (len > lmax) too_long(where, len, lmax);
        next[static_cast<std::size_t>(n_in)][local] = len;
        next[static_cast<std::size_t>(n_in + 1)][local] = vals[static_cast<std::size_t>(n_in + 1)] - y[3];
        next[static_cast<std::size_t>(n_in + 2)][local] = vals[static_cast<std::size_t>(n_in + 2)] + err;
      }
    }
    // all axis nodes are one physical point; keep them bitwise identical
    for (int a = 0; a < n_car; ++a) {
      CapField& c = next[static_cast<std::size_t>(a)];
      for (int j = 1; j < g.n_theta(); ++j) c[static_cast<std::size_t>(j)] = c[0];
      std::copy(c.values().begin(), c.values().end(), res.out[static_cast<std::size_t>(a)].begin() + k * plane);
    }
    prev = std::move(next);
  }
  res.min_axial = std::min(seg.min_axial(), min_axial(v));
  for (double x : res.out[static_cast<std::size_t>(n_in)]) res.max_length = std::max(res.max_length, x);
  for (double x : res.out[static_cast<std::size_t>(n_in + 2)]) res.max_error = std::max(res.max_error, x);
  return res;
}

ScalarField to_field(GridPtr g, std::vector<double> values) {
  ScalarField s(std::move(g));
  s.values() = std::move(values);
  return s;
}

}  // namespace

TransportField solve_transport(const VectorField& v, const CapVectorField& f0, const TransportOptions& opt) {
  MarchResult m = march(v, {&f0.c[0], &f0.c[1], &f0.c[2]}, true, opt, "solve_transport");
  const GridPtr& g = v.grid();
  TransportField t;
  t.f = VectorField(to_field(g, std::move(m.out[0])), to_field(g, std::move(m.out[1])),
                    to_field(g, std::move(m.out[2])), Frame::Cartesian);
  t.length = to_field(g, std::move(m.out[3]));
  t.time = to_field(g, std::move(m.out[4]));
  t.error = to_field(g, std::move(m.out[5]));
  t.max_length = m.max_length;
  t.max_error = m.max_error;
  t.min_axial = m.min_axial;
  return t;
}

ScalarField transport_scalar(const VectorField& v, const CapField& s0, const TransportOptions& opt) {
  TransportOptions o = opt;
  o.estimate_error = false;
  MarchResult m = march(v, {&s0}, false, o, "transport_scalar");
  return to_field(v.grid(), std::move(m.out[0]));
}

Streamline trace(const VectorField& v, const Point& seed, TraceDirection direction, const TraceOptions& opt) {
  const CylGrid& g = *v.grid();
  const double R = g.radius(), L = g.length();
  const double c_min = resolve_c_min(v, opt.c_min, "trace");
  const double lmax = opt.length_max > 0.0 ? opt.length_max : default_length_max(v, c_min);
  const VectorField vc = to_cartesian(v);
  const Interpolator vel({&vc.comp(0), &vc.comp(1), &vc.comp(2)});
  const double sign = direction == TraceDirection::Forward ? 1.0 : -1.0;
  const double target = direction == TraceDirection::Forward ? L : 0.0;

  // state: x, y, z, arclength
  using State = std::array<double, 4>;
  auto rhs = [&](const State& y, State& dy) {
    double x0 = y[0], y0 = y[1];
    clamp_radius(x0, y0, R);
    const double z = std::clamp(y[2], 0.0, L);
    double q[3];
    vel.eval(Point{x0, y0, z}, q);
    if (!(q[2] >= 0.5 * c_min)) stagnation("trace", q[2], c_min, std::hypot(x0, y0), z);
    dy = {sign * q[0], sign * q[1], sign * q[2], std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2])};
  };
  auto rk4 = [&](const State& y, double h) {
    State k1, k2, k3, k4, t;
    rhs(y, k1);
    for (int a = 0; a < 4; ++a) t[a] = y[a] + 0.5 * h * k1[a];
    rhs(t, k2);
    for (int a = 0; a < 4; ++a) t[a] = y[a] + 0.5 * h * k2[a];
    rhs(t, k3);
    for (int a = 0; a < 4; ++a) t[a] = y[a] + h * k3[a];
    rhs(t, k4);
    State out;
    for (int a = 0; a < 4; ++a) out[a] = y[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    return out;
  };
  auto doubled = [&](const State& y, double h) { return rk4(rk4(y, 0.5 * h), 0.5 * h); };
  auto beyond = [&](double z) { return direction == TraceDirection::Forward ? z >= target : z <= target; };

  Streamline sl;
  sl.seed = seed;
  sl.direction = direction;
  State y{seed.x, seed.y, std::clamp(seed.z, 0.0, L), 0.0};
  double t = 0.0;
  sl.samples.push_back({seed, 0.0, 0.0});
  if (beyond(y[2])) {
    sl.end = direction == TraceDirection::Forward ? TraceEnd::Outflow : TraceEnd::Inflow;
    return sl;
  }
  double vmax = 0.0;
  for (std::size_t n = 0; n < vc.size(); ++n) {
    const Vec3 a = vc.at(n);
    vmax = std::max(vmax, std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]));
  }
  double h = std::min(g.dr(), g.dz()) / vmax;
  const long max_steps = 10000000;
  for (long step = 0; step < max_steps; ++step) {
    const State coarse = rk4(y, h);
    const State fine = doubled(y, h);
    const double seglen = std::max(fine[3] - y[3], 1e-300);
    const double err =
        std::sqrt((fine[0] - coarse[0]) * (fine[0] - coarse[0]) + (fine[1] - coarse[1]) * (fine[1] - coarse[1]) +
                  (fine[2] - coarse[2]) * (fine[2] - coarse[2])) /
        15.0;
    const double allowed = opt.tol * seglen;
    if (err > allowed) {
      h *= std::max(0.2, 0.9 * std::pow(allowed / err, 0.2));
      continue;
    }
    State next = fine;
    double dt = h;
    if (beyond(next[2])) {
      // bisection on the step size for the cap crossing
      double lo = 0.0, hi = h;
      dt = hi;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const State s = doubled(y, mid);
        if (std::abs(s[2] - target) <= 1e-10 * L) {
          next = s;
          dt = mid;
          break;
        }
        if (beyond(s[2])) {
          hi = mid;
          next = s;
          dt = mid;
        } else {
          lo = mid;
        }
      }
      next[2] = target;
    }
    if (clamp_radius(next[0], next[1], R)) ++sl.mantle_clamps;
    y = next;
    t += dt;
    if (y[3] > lmax) too_long("trace", y[3], lmax);
    sl.samples.push_back({Point{y[0], y[1], y[2]}, y[3], t});
    if (beyond(y[2])) {
      sl.end = direction == TraceDirection::Forward ? TraceEnd::Outflow : TraceEnd::Inflow;
      sl.length = y[3];
      return sl;
    }
    if (err > 0.0) h *= std::clamp(0.9 * std::pow(allowed / err, 0.2), 0.2, 4.0);
    else h *= 4.0;
  }
  too_long("trace", y[3], lmax);
}

TransportEstimates transport_estimates(const VectorField& f, const CapVectorField& f0,
                                       std::optional<TransportPair> first, std::optional<TransportPair> second) {
  TransportEstimates e;
  const double n0 = norm(f0, NormKind::L2), n0h = norm(f0, NormKind::H1);
  if (n0 > 0.0) e.ratio_l2 = norm(f, NormKind::L2) / n0;
  if (n0h > 0.0) e.ratio_h1 = norm(f, NormKind::H1) / n0h;
  if (first && second) {
    const VectorField v1 = to_cartesian(*first->v), v2 = to_cartesian(*second->v);
    const VectorField f1 = to_cartesian(*first->f), f2 = to_cartesian(*second->f);
    const double dv = norm(v2 - v1, NormKind::H1);
    const double df = norm(f2 - f1, NormKind::L2);
    e.difference_ratio = (n0 > 0.0 && dv > 0.0) ? df / (n0 * dv) : 0.0;
  }
  return e;
}

}  // namespace cylflow
