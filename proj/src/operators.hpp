#pragma once

// Pointwise application of the first- and second-order operators to gauged
// jets, and the residual reduction shared by darboux2 and verify.

#include "seed_internal.hpp"
#include "susyhydra/report.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace susyhydra::detail {

inline DD dd_imag_eps(const CDD &k) {
  // Im(-k^2) = -2 k1 k2
  return DD(-2.0) * k.re * k.im;
}

inline Gauged op_d(const Gauged &g, double r) {
  return {g.gauge, apply_d(g.t, gauge_log_derivative(g.gauge, r, DJ::kMax))};
}

inline Gauged op_scale(const Gauged &g, const DJ &w) { return {g.gauge, w * g.t}; }

inline Gauged op_add(const Gauged &a, const Gauged &b) { return {a.gauge, a.t + b.t}; }

inline Gauged op_neg(const Gauged &a) { return {a.gauge, -a.t}; }

/// H_l g = -g'' + V_l g
inline Gauged op_h(const Gauged &g, int l, double r) {
  const Gauged d2 = op_d(op_d(g, r), r);
  return op_add(op_neg(d2), op_scale(g, coulomb_jet(l, r, DJ::kMax)));
}

/// -g'' + V g for a potential jet V
inline Gauged op_h(const Gauged &g, const DJ &V, double r) {
  const Gauged d2 = op_d(op_d(g, r), r);
  return op_add(op_neg(d2), op_scale(g, V));
}

/// B g = g' + beta g
inline Gauged op_b(const Gauged &g, const DJ &beta, double r) {
  return op_add(op_d(g, r), op_scale(g, beta));
}

/// A g = -g' + beta g
inline Gauged op_a(const Gauged &g, const DJ &beta, double r) {
  return op_add(op_neg(op_d(g, r)), op_scale(g, beta));
}

/// Value of the gauged function rounded to double.
inline cplx value(const Gauged &g, double r) {
  if (g.t.n == 0)
    throw InvalidArgumentError("jet exhausted while applying an operator");
  return gauge_value(g.gauge, r) * to_complex(g.t.d[0]);
}

/// Quantities of the second-order transform at one radius.
struct SecondJets {
  DJ x;      // Im(f conj f') + k2 |f|^2, so omega = |g|^2 x / eps2
  DJ f2;     // |f|^2, so omega' = |g|^2 f2
  DJ eta;    // -eps2 |f|^2 / x
  DJ beta_b; // conj(beta_a)
  DJ gamma;  // beta_b' - beta_b^2 + eta beta_b
  DJ vtilde; // V_l + 2 eta'
};

inline SecondJets second_jets(const SeedJets &sj, const CDD &k, int l,
                              double r) {
  SecondJets s;
  const DJ &f = sj.f;
  const DJ p = f * conj(f.derivative());
  s.f2 = f * conj(f);
  s.x = DJ(p.n);
  for (int j = 0; j < p.n; ++j)
    s.x.d[j] = CDD(p.d[j].im + k.im * s.f2.d[j].re);
  // f2 and x are real by construction; drop rounding residue in Im.
  for (int j = 0; j < s.f2.n; ++j)
    s.f2.d[j].im = DD(0.0);
  const DD eps2 = dd_imag_eps(k);
  s.eta = (s.f2 * CDD(-eps2)) / s.x;
  s.beta_b = conj(sj.beta);
  s.gamma = s.beta_b.derivative() - s.beta_b * s.beta_b + s.eta * s.beta_b;
  s.vtilde = coulomb_jet(l, r, DJ::kMax) + s.eta.derivative() * 2.0;
  return s;
}

/// A~ g = g'' + eta g' + gamma g
inline Gauged op_a_tilde(const Gauged &g, const SecondJets &s, double r) {
  const Gauged d1 = op_d(g, r);
  return op_add(op_add(op_d(d1, r), op_scale(d1, s.eta)), op_scale(g, s.gamma));
}

/// Terms of (H~ A~ - A~ H_l) g, summing to zero.
inline std::vector<cplx> second_order_terms(const Gauged &g, const SecondJets &s,
                                            int l, double r) {
  const Gauged ag = op_a_tilde(g, s, r);
  const Gauged d2 = op_d(op_d(ag, r), r);
  const Gauged rhs = op_a_tilde(op_h(g, l, r), s, r);
  return {-value(d2, r), value(op_scale(ag, s.vtilde), r), -value(rhs, r)};
}

/// Exponential of a jet by the recurrence y' = g' y.
template <class T> Jet<T> exp_jet(const Jet<T> &g, T e0) {
  Jet<T> y(g.n);
  if (g.n == 0)
    return y;
  y.d[0] = e0;
  for (int m = 0; m + 1 < g.n; ++m) {
    T acc(0.0);
    for (int j = 0; j <= m; ++j)
      acc = acc + g.d[j + 1] * y.d[m - j] * jet_detail::binom(m, j);
    y.d[m + 1] = acc;
  }
  return y;
}

/// exp(-1/(1-x^2)) with x = (r - c)/w, zero outside |x| < 1.
inline DJ bump_jet(double center, double width, double r) {
  const double x = (r - center) / width;
  DJ out(DJ::kMax);
  if (std::abs(x) >= 1.0)
    return out;
  DJ xj(DJ::kMax);
  xj.d[0] = CDD(DD(r - center) / DD(width));
  xj.d[1] = CDD(DD(1.0) / DD(width));
  const DJ q = add_constant(-(xj * xj), CDD(1.0));
  const DJ g = -(DJ::constant(CDD(1.0), DJ::kMax) / q);
  return exp_jet(g, CDD(ddm::exp(g.d[0].re)));
}

/// Residual samples: the value of an identity and the sum of the
/// magnitudes of the terms entering it.
struct ResidualSamples {
  std::vector<double> res;
  std::vector<double> scale;
};

/// Evaluates terms(r) -> vector<cplx> at each node; the identity is that the
/// terms sum to zero.
template <class F>
ResidualSamples sample_residual(const RadialGrid &grid, F &&terms) {
  ResidualSamples s;
  s.res.assign(grid.size(), 0.0);
  s.scale.assign(grid.size(), 0.0);
  for_each_node(grid.size(), [&](std::size_t i) {
    const std::vector<cplx> t = terms(grid[i]);
    cplx sum = 0.0;
    double mag = 0.0;
    for (const cplx &x : t) {
      sum += x;
      mag += std::abs(x);
    }
    s.res[i] = std::abs(sum);
    s.scale[i] = mag;
  });
  return s;
}

/// max_i res_i / (scale_i + floor * max scale) over interior nodes.
inline ResidualReport reduce_residual(const std::string &identity,
                                      const RadialGrid &grid,
                                      const ResidualSamples &s,
                                      double tolerance) {
  ResidualReport rep;
  rep.identity = identity;
  rep.tolerance = tolerance;
  const std::size_t n = s.res.size();
  if (n < 2 * kEdgeNodes + 1)
    throw InsufficientRangeError("grid too small for residual norms");
  rep.node_first = kEdgeNodes;
  rep.node_last = n - 1 - kEdgeNodes;
  double smax = 0.0;
  for (std::size_t i = rep.node_first; i <= rep.node_last; ++i)
    smax = std::max(smax, s.scale[i]);
  double worst = 0.0;
  for (std::size_t i = rep.node_first; i <= rep.node_last; ++i) {
    const double w = s.scale[i] + kWeightFloor * smax;
    const double q = w > 0.0 ? s.res[i] / w : 0.0;
    if (!(q <= worst)) {
      worst = q;
      rep.worst_radius = grid[i];
    }
  }
  rep.relative_residual = worst;
  rep.pass = worst < tolerance;
  return rep;
}

} // namespace susyhydra::detail
