#include "cylflow/norms.hpp"

#include <algorithm>
#include <cmath>

#include "cylflow/error.hpp"
#include "cylflow/operators.hpp"

namespace cylflow {

namespace {

void require_finite(bool ok, const char* what) {
  if (!ok) throw ValidationError(std::string(what) + ": non-finite field value");
}

double weighted_sum_sq(const CylGrid& g, const ScalarField* const* comps, int n) {
  double total = 0.0;
  for (int k = 0; k < g.n_z(); ++k) {
    for (int i = 0; i < g.n_r(); ++i) {
      const double w = g.volume_weight(i, k);
      if (w == 0.0) continue;
      const std::size_t off = g.ring_offset(i, k);
      double ring = 0.0;
      for (int j = 0; j < g.n_theta(); ++j) {
        for (int a = 0; a < n; ++a) {
          const double x = (*comps[a])[off + j];
          ring += x * x;
        }
      }
      total += w * ring;
    }
  }
  return total;
}

double grad_sq(const ScalarField& s) {
  const VectorField gr = grad(s);
  const ScalarField* c[3] = {&gr.comp(0), &gr.comp(1), &gr.comp(2)};
  return weighted_sum_sq(*s.grid(), c, 3);
}

}  // namespace

double integrate(const ScalarField& s) {
  const CylGrid& g = *s.grid();
  double total = 0.0;
  for (int k = 0; k < g.n_z(); ++k) {
    for (int i = 0; i < g.n_r(); ++i) {
      const std::size_t off = g.ring_offset(i, k);
      double ring = 0.0;
      for (int j = 0; j < g.n_theta(); ++j) ring += s[off + j];
      total += g.volume_weight(i, k) * ring;
    }
  }
  return total;
}

double norm(const ScalarField& s, NormKind kind) {
  require_finite(s.all_finite(), "norm");
  const ScalarField* c[1] = {&s};
  switch (kind) {
    case NormKind::L2: return std::sqrt(weighted_sum_sq(*s.grid(), c, 1));
    case NormKind::H1: return std::sqrt(weighted_sum_sq(*s.grid(), c, 1) + grad_sq(s));
    case NormKind::Linf: {
      double m = 0.0;
      for (double x : s.values()) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

double norm(const VectorField& f, NormKind kind) {
  require_finite(f.all_finite(), "norm");
  const ScalarField* c[3] = {&f.comp(0), &f.comp(1), &f.comp(2)};
  switch (kind) {
    case NormKind::L2: return std::sqrt(weighted_sum_sq(*f.grid(), c, 3));
    case NormKind::H1: {
      const VectorField fc = to_cartesian(f);
      double total = weighted_sum_sq(*f.grid(), c, 3);
      for (int a = 0; a < 3; ++a) total += grad_sq(fc.comp(a));
      return std::sqrt(total);
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (std::size_t n = 0; n < f.size(); ++n) {
        const Vec3 v = f.at(n);
        m = std::max(m, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
      }
      return m;
    }
  }
  return 0.0;
}

double mantle_norm(const ScalarField& s) {
  const CylGrid& g = *s.grid();
  const int i = g.n_r() - 1;
  double total = 0.0;
  for (int k = 0; k < g.n_z(); ++k) {
    const std::size_t off = g.ring_offset(i, k);
    double ring = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) ring += s[off + j] * s[off + j];
    total += g.mantle_area_weight(k) * ring;
  }
  return std::sqrt(total);
}

double cap_integral(const CapField& c) {
  const CylGrid& g = *c.grid();
  double total = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) ring += c.at(i, j);
    total += g.cap_area_weight(i) * ring;
  }
  return total;
}

namespace {

double cap_sum_sq(const CylGrid& g, const CapField* const* comps, int n) {
  double total = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) {
      for (int a = 0; a < n; ++a) {
        const double x = comps[a]->at(i, j);
        ring += x * x;
      }
    }
    total += g.cap_area_weight(i) * ring;
  }
  return total;
}

double cap_grad_sq(const CapField& c) {
  const CapVectorField gr = cap_gradient(c);
  const CapField* p[2] = {&gr.c[0], &gr.c[1]};
  return cap_sum_sq(*c.grid(), p, 2);
}

}  // namespace

double norm(const CapField& c, NormKind kind) {
  const CapField* p[1] = {&c};
  switch (kind) {
    case NormKind::L2: return std::sqrt(cap_sum_sq(*c.grid(), p, 1));
    case NormKind::H1: return std::sqrt(cap_sum_sq(*c.grid(), p, 1) + cap_grad_sq(c));
    case NormKind::Linf: {
      double m = 0.0;
      for (double x : c.values()) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

double norm(const CapVectorField& c, NormKind kind) {
  const CapField* p[3] = {&c.c[0], &c.c[1], &c.c[2]};
  switch (kind) {
    case NormKind::L2: return std::sqrt(cap_sum_sq(*c.grid(), p, 3));
    case NormKind::H1: {
      double total = cap_sum_sq(*c.grid(), p, 3);
      for (int a = 0; a < 3; ++a) total += cap_grad_sq(c.c[static_cast<std::size_t>(a)]);
      return std::sqrt(total);
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (std::size_t n = 0; n < c.c[0].size(); ++n) {
        const Vec3 v = c.at(n);
        m = std::max(m, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
      }
      return m;
    }
  }
  return 0.0;
}

CapVectorField cap_gradient(const CapField& c) {
  // The extruded field is constant in z, so its z-derivative vanishes
  // exactly and plane 0 of the volume gradient is the surface gradient.
  const VectorField g3 = to_cartesian(grad(c.extrude()));
  CapVectorField out = CapVectorField::restrict(g3, 0);
  for (double& x : out.c[2].values()) x = 0.0;
  return out;
}

}  // namespace cylflow
