#pragma once

// Complex special functions: log-Gamma, digamma, Kummer M = 1F1(a;c;z),
// Tricomi U(a,c,z) at integer c, and their z-derivatives.

#include "susyhydra/dd.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace susyhydra::specfun {

using cplx = std::complex<double>;

struct Options {
  // |z| at which the Taylor / log-series regime hands over to the
  // asymptotic expansion.
  double crossover = 30.0;
  // Estimated relative truncation error the asymptotic series must beat
  // before it is used; otherwise the Kummer ODE is integrated in
  // double-double from a point where the result is known.
  double asymptotic_tol = 1e-15;
  // Longest step of the ODE continuation.
  double max_step = 4.0;
};

cplx ln_gamma(cplx z);
cplx digamma(cplx z);
cplx gamma(cplx z);
/// 1/Gamma(z), zero at the poles.
cplx rgamma(cplx z);

cplx kummer_m(cplx a, int c, cplx z, const Options &opt = {});
cplx tricomi_u(cplx a, int c, cplx z, const Options &opt = {});

/// (dM/dz, dU/dz) via contiguous relations. dU/dz is NaN at z = 0.
std::pair<cplx, cplx> hypergeometric_derivatives(cplx a, int c, cplx z,
                                                 const Options &opt = {});

// Double-double entry points. Small-|z| results carry about 30 digits; the
// asymptotic regime is double precision with lo = 0.
CDD kummer_m_dd(const CDD &a, int c, const CDD &z, const Options &opt = {});
CDD tricomi_u_dd(const CDD &a, int c, const CDD &z, const Options &opt = {});

/// d^j/dz^j M(a,c,z) for j = 0..order.
std::vector<CDD> kummer_m_jet(const CDD &a, int c, const CDD &z, int order,
                              const Options &opt = {});
/// d^j/dz^j U(a,c,z) for j = 0..order.
std::vector<CDD> tricomi_u_jet(const CDD &a, int c, const CDD &z, int order,
                               const Options &opt = {});

} // namespace susyhydra::specfun
