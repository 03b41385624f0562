#pragma once

// Double-double ("pair of doubles") arithmetic, real and complex.
//
// A DD value is the unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving
// roughly 32 significant decimal digits. Only the four arithmetic operations
// are provided here; the test oracle layers elementary functions on top.
// Requires IEEE round-to-nearest and no -ffast-math.

#include <algorithm>
#include <cmath>
#include <complex>

namespace susyhydra {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline DD operator-(const DD &a) { return {-a.hi, -a.lo}; }

inline DD operator+(const DD &a, const DD &b) {
  using namespace dd_detail;
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(const DD &a, const DD &b) { return a + (-b); }

inline DD operator*(const DD &a, const DD &b) {
  using namespace dd_detail;
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD operator*(const DD &a, double b) {
  using namespace dd_detail;
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DD operator*(double a, const DD &b) { return b * a; }

inline DD operator/(const DD &a, const DD &b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  return dd_detail::quick_two_sum(q1, q2) + DD(q3);
}

inline DD operator/(const DD &a, double b) {
  using namespace dd_detail;
  const double q1 = a.hi / b;
  DD p = two_prod(q1, b);
  DD r = two_sum(a.hi, -p.hi);
  r.lo -= p.lo;
  r.lo += a.lo;
  const double q2 = (r.hi + r.lo) / b;
  return quick_two_sum(q1, q2);
}

inline DD &operator+=(DD &a, const DD &b) { return a = a + b; }
inline DD &operator-=(DD &a, const DD &b) { return a = a - b; }
inline DD &operator*=(DD &a, const DD &b) { return a = a * b; }
inline DD &operator/=(DD &a, const DD &b) { return a = a / b; }

inline double to_double(const DD &a) { return a.hi + a.lo; }
inline double abs_approx(const DD &a) { return std::abs(a.hi); }

/// Complex double-double.
struct CDD {
  DD re;
  DD im;

  constexpr CDD() = default;
  constexpr CDD(double r) : re(r), im(0.0) {}
  constexpr CDD(const DD &r) : re(r), im(0.0) {}
  constexpr CDD(const DD &r, const DD &i) : re(r), im(i) {}
  CDD(const std::complex<double> &z) : re(z.real()), im(z.imag()) {}
};

inline CDD operator-(const CDD &a) { return {-a.re, -a.im}; }
inline CDD operator+(const CDD &a, const CDD &b) {
  return {a.re + b.re, a.im + b.im};
}
inline CDD operator-(const CDD &a, const CDD &b) {
  return {a.re - b.re, a.im - b.im};
}
inline CDD operator*(const CDD &a, const CDD &b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CDD operator*(const CDD &a, const DD &b) { return {a.re * b, a.im * b}; }
inline CDD operator*(const CDD &a, double b) { return {a.re * b, a.im * b}; }
inline CDD operator*(double b, const CDD &a) { return a * b; }
inline CDD operator/(const CDD &a, double b) { return {a.re / b, a.im / b}; }
inline CDD operator/(const CDD &a, const DD &b) { return {a.re / b, a.im / b}; }

inline CDD operator/(const CDD &a, const CDD &b) {
  // Scale by the larger component first so |b|^2 cannot overflow.
  const double s = std::max(std::abs(b.re.hi), std::abs(b.im.hi));
  const CDD bs{b.re / s, b.im / s};
  const DD den = bs.re * bs.re + bs.im * bs.im;
  const CDD num{a.re * bs.re + a.im * bs.im, a.im * bs.re - a.re * bs.im};
  return {num.re / den / s, num.im / den / s};
}

inline CDD &operator+=(CDD &a, const CDD &b) { return a = a + b; }
inline CDD &operator-=(CDD &a, const CDD &b) { return a = a - b; }
inline CDD &operator*=(CDD &a, const CDD &b) { return a = a * b; }
inline CDD &operator/=(CDD &a, const CDD &b) { return a = a / b; }

inline CDD conj(const CDD &a) { return {a.re, -a.im}; }
inline std::complex<double> to_complex(const CDD &a) {
  return {to_double(a.re), to_double(a.im)};
}
inline double abs_approx(const CDD &a) { return std::hypot(a.re.hi, a.im.hi); }

} // namespace susyhydra
