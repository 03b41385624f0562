#pragma once

// Seed-derived jets at a single radius, shared by the transform modules.

#include "pointwise.hpp"
#include "susyhydra/darboux1.hpp"

namespace susyhydra::detail {

/// For alpha, zeta != 0 and Re k < 0 the seed is carried as
/// theta U(a, c, z) + v e^z U(c - a, c, -z), which is free of the
/// cancellation between alpha M and zeta U at large r.
struct SeedConnection {
  bool active = false;
  cplx theta;
  cplx coef_v;
};

inline SeedConnection seed_connection(const darboux1::FactorizationConfig &cfg) {
  SeedConnection c;
  if (cfg.alpha == 0.0 || cfg.zeta == 0.0 || !(cfg.k.real() < 0.0))
    return c;
  c.active = true;
  const int sign = cfg.k.imag() >= 0.0 ? 1 : -1;
  c.theta = darboux1::theta(cfg, sign);
  // theta below the rounding of its two parts is zero.
  if (std::abs(c.theta) <= 1e-12 * (std::abs(cfg.zeta) + std::abs(c.theta - cfg.zeta)))
    c.theta = 0.0;
  const cplx a = cfg.a();
  c.coef_v = cfg.alpha * std::exp(std::lgamma(double(cfg.c()))) *
             specfun::rgamma(a) *
             std::exp(cplx(0.0, sign * 3.14159265358979323846) * (a - double(cfg.c())));
  return c;
}

inline KummerSolution seed_solution(const darboux1::FactorizationConfig &cfg) {
  KummerSolution s = KummerSolution::general(cfg.l, cfg.k, cfg.alpha, cfg.zeta);
  const SeedConnection c = seed_connection(cfg);
  if (c.active) {
    s.use_m = false;
    s.coef_m = CDD(0.0);
    s.use_u = c.theta != 0.0;
    s.coef_u = CDD(c.theta);
    s.use_v = true;
    s.coef_v = CDD(c.coef_v);
  }
  return s;
}

struct SeedJets {
  DJ f;            // f, f', ..., f''''
  DJ f_ratio;      // f'/f
  DJ beta;         // -(l+1)/r + k - f'/f
  double cancel = 1.0; // |f| over the sum of its parts' magnitudes
};

inline SeedJets seed_jets(const KummerSolution &seed, double r,
                          const specfun::Options &opt) {
  SeedJets s;
  double scale = 0.0;
  s.f = seed.jet(r, opt, DJ::kMax, &scale);
  const double fm = abs_approx(s.f.d[0]);
  s.cancel = scale > 0.0 ? fm / scale : 0.0;
  if (fm == 0.0 || !std::isfinite(fm))
    throw SingularBetaError("seed u vanishes at r = " + std::to_string(r));
  s.f_ratio = s.f.derivative() / s.f;
  DJ b = -inverse_power_jet<CDD>(double(seed.l + 1), r, s.f_ratio.n) - s.f_ratio;
  s.beta = add_constant(b, seed.kappa);
  return s;
}

/// B applied to a gauged solution with gauge power l+1: the 1/r parts of
/// L and beta cancel analytically, leaving T' + (k - s - f'/f) T.
inline Gauged apply_b_gauged(const Gauged &phi, const SeedJets &sj,
                             const CDD &k, int l, double r) {
  Gauged out;
  out.gauge = phi.gauge;
  if (phi.gauge.p == double(l + 1)) {
    const DJ w = add_constant(-sj.f_ratio, k - phi.gauge.s);
    out.t = phi.t.derivative() + w * phi.t;
  } else {
    const DJ L = gauge_log_derivative(phi.gauge, r, DJ::kMax);
    out.t = phi.t.derivative() + (L + sj.beta) * phi.t;
  }
  return out;
}

} // namespace susyhydra::detail
