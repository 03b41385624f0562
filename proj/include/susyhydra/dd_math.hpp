#pragma once

// Elementary functions in double-double precision.

#include "susyhydra/dd.hpp"
#include "susyhydra/errors.hpp"

#include <cmath>

namespace susyhydra::ddm {

inline constexpr DD pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DD half_pi{1.5707963267948966, 6.123233995736766e-17};
inline constexpr DD ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DD euler_gamma{0.5772156649015329, -4.942915152430645e-18};

inline DD ldexp(const DD &a, int e) {
  return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

inline DD sqrt(const DD &a) {
  if (a.hi <= 0.0)
    return DD(0.0);
  const double q = std::sqrt(a.hi);
  const DD r = a - dd_detail::two_prod(q, q);
  return dd_detail::quick_two_sum(q, r.hi / (2.0 * q));
}

inline DD exp(const DD &a) {
  if (a.hi > 709.0)
    return DD(HUGE_VAL);
  if (a.hi < -745.0)
    return DD(0.0);
  const double m = std::nearbyint(a.hi / ln2.hi);
  DD r = ldexp(a - ln2 * m, -10);
  // Taylor to about 1e-36 on |r| < 4e-4, then square back up.
  DD term = r;
  DD sum = r;
  for (int n = 2; n < 14; ++n) {
    term = term * r / double(n);
    sum += term;
  }
  for (int i = 0; i < 10; ++i)
    sum = sum * (sum + 2.0); // (1+s)^2 - 1
  return ldexp(sum + 1.0, int(m));
}

inline DD log(const DD &a) {
  if (a.hi <= 0.0)
    throw DomainError("dd log of a non-positive number");
  DD x = std::log(a.hi);
  for (int i = 0; i < 2; ++i)
    x = x + a * exp(-x) - 1.0;
  return x;
}

// sin and cos on |r| <= pi/4.
inline void sincos_reduced(const DD &r, DD &s, DD &c) {
  const DD r2 = r * r;
  DD ts = r, tc = 1.0;
  s = r;
  c = 1.0;
  for (int n = 1; n < 20; ++n) {
    ts = -ts * r2 / double((2 * n) * (2 * n + 1));
    tc = -tc * r2 / double((2 * n - 1) * (2 * n));
    s += ts;
    c += tc;
  }
}

inline void sincos(const DD &a, DD &s, DD &c) {
  const double q = std::nearbyint(a.hi / half_pi.hi);
  const DD r = a - half_pi * q;
  DD sr, cr;
  sincos_reduced(r, sr, cr);
  switch (((long long)q % 4 + 4) % 4) {
  case 0: s = sr; c = cr; break;
  case 1: s = cr; c = -sr; break;
  case 2: s = -sr; c = -cr; break;
  default: s = -cr; c = sr; break;
  }
}

inline DD atan2(const DD &y, const DD &x) {
  const double t0 = std::atan2(y.hi, x.hi);
  DD s, c;
  sincos(DD(t0), s, c);
  // tan(t - t0) = (y c - x s)/(x c + y s); the correction is O(1e-16) so
  // atan of it equals it to dd precision.
  const DD num = y * c - x * s;
  const DD den = x * c + y * s;
  return DD(t0) + num / den;
}

inline CDD exp(const CDD &z) {
  const DD m = exp(z.re);
  DD s, c;
  sincos(z.im, s, c);
  return {m * c, m * s};
}

/// Principal branch.
inline CDD log(const CDD &z) {
  if (z.re.hi == 0.0 && z.im.hi == 0.0)
    throw DomainError("dd log of zero");
  const double sc = std::max(std::abs(z.re.hi), std::abs(z.im.hi));
  const DD xr = z.re / sc, xi = z.im / sc;
  const DD m2 = xr * xr + xi * xi;
  return {log(m2) * 0.5 + log(DD(sc)), atan2(z.im, z.re)};
}

/// z^s on the principal branch.
inline CDD pow(const CDD &z, const CDD &s) { return exp(s * log(z)); }

inline DD bernoulli_over_2j(int j) {
  // B_{2j}/(2j), j = 1..15
  static const double num[] = {1.0,          -1.0,        1.0,
                               -1.0,         5.0,         -691.0,
                               7.0,          -3617.0,     43867.0,
                               -174611.0,    854513.0,    -236364091.0,
                               8553103.0,    -23749461029.0, 8615841276005.0};
  static const double den[] = {6.0,   30.0,  42.0,   30.0,  66.0,
                               2730.0, 6.0,  510.0,  798.0, 330.0,
                               138.0, 2730.0, 6.0,   870.0, 14322.0};
  return DD(num[j - 1]) / DD(den[j - 1] * 2.0 * j);
}

/// Digamma on the whole plane minus the poles, by upward recurrence and the
/// Stirling-type asymptotic series at Re w >= 30.
inline CDD digamma(const CDD &z) {
  const double zr = to_double(z.re), zi = to_double(z.im);
  if (zi == 0.0 && zr <= 0.0 && zr == std::floor(zr))
    throw PoleError("digamma pole at a non-positive integer");
  CDD w = z;
  CDD shift(0.0);
  while (w.re.hi < 30.0) {
    shift -= CDD(1.0) / w;
    w += CDD(1.0);
  }
  const CDD inv = CDD(1.0) / w;
  const CDD inv2 = inv * inv;
  CDD acc = log(w) - inv * 0.5;
  CDD p = inv2;
  for (int j = 1; j <= 15; ++j) {
    acc -= p * bernoulli_over_2j(j);
    p *= inv2;
  }
  return acc + shift;
}

} // namespace susyhydra::ddm
