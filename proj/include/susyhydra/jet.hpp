#pragma once

// Truncated derivative arithmetic: a Jet holds f, f', ..., f^(n-1) at one
// point. Products use Leibniz, quotients the matching recurrence.

#include "susyhydra/dd.hpp"

#include <algorithm>
#include <array>
#include <complex>

namespace susyhydra {

inline std::complex<double> conj_value(const std::complex<double> &z) {
  return std::conj(z);
}
inline CDD conj_value(const CDD &z) { return conj(z); }

template <class T> struct Jet {
  static constexpr int kMax = 5;
  std::array<T, kMax> d{};
  int n = 0; // number of valid entries

  Jet() = default;
  explicit Jet(int count) : n(count) {
    for (auto &x : d)
      x = T(0.0);
  }

  static Jet constant(const T &c, int count) {
    Jet j(count);
    j.d[0] = c;
    return j;
  }

  const T &operator[](int i) const { return d[i]; }
  T &operator[](int i) { return d[i]; }

  Jet derivative() const {
    Jet out(std::max(n - 1, 0));
    for (int i = 0; i + 1 < n; ++i)
      out.d[i] = d[i + 1];
    return out;
  }
};

namespace jet_detail {
inline double binom(int n, int k) {
  static const double tab[5][5] = {{1, 0, 0, 0, 0},
                                   {1, 1, 0, 0, 0},
                                   {1, 2, 1, 0, 0},
                                   {1, 3, 3, 1, 0},
                                   {1, 4, 6, 4, 1}};
  return tab[n][k];
}
} // namespace jet_detail

template <class T> Jet<T> operator+(const Jet<T> &a, const Jet<T> &b) {
  Jet<T> out(std::min(a.n, b.n));
  for (int i = 0; i < out.n; ++i)
    out.d[i] = a.d[i] + b.d[i];
  return out;
}

template <class T> Jet<T> operator-(const Jet<T> &a, const Jet<T> &b) {
  Jet<T> out(std::min(a.n, b.n));
  for (int i = 0; i < out.n; ++i)
    out.d[i] = a.d[i] - b.d[i];
  return out;
}

template <class T> Jet<T> operator-(const Jet<T> &a) {
  Jet<T> out(a.n);
  for (int i = 0; i < a.n; ++i)
    out.d[i] = -a.d[i];
  return out;
}

template <class T> Jet<T> operator*(const Jet<T> &a, const T &s) {
  Jet<T> out(a.n);
  for (int i = 0; i < a.n; ++i)
    out.d[i] = a.d[i] * s;
  return out;
}

template <class T> Jet<T> operator*(const T &s, const Jet<T> &a) {
  return a * s;
}

template <class T> Jet<T> operator*(const Jet<T> &a, double s) {
  Jet<T> out(a.n);
  for (int i = 0; i < a.n; ++i)
    out.d[i] = a.d[i] * s;
  return out;
}

template <class T> Jet<T> operator*(const Jet<T> &a, const Jet<T> &b) {
  Jet<T> out(std::min(a.n, b.n));
  for (int k = 0; k < out.n; ++k) {
    T acc(0.0);
    for (int i = 0; i <= k; ++i)
      acc = acc + a.d[i] * b.d[k - i] * jet_detail::binom(k, i);
    out.d[k] = acc;
  }
  return out;
}

template <class T> Jet<T> operator/(const Jet<T> &a, const Jet<T> &b) {
  Jet<T> q(std::min(a.n, b.n));
  for (int k = 0; k < q.n; ++k) {
    T acc = a.d[k];
    for (int i = 1; i <= k; ++i)
      acc = acc - b.d[i] * q.d[k - i] * jet_detail::binom(k, i);
    q.d[k] = acc / b.d[0];
  }
  return q;
}

template <class T> Jet<T> conj(const Jet<T> &a) {
  Jet<T> out(a.n);
  for (int i = 0; i < a.n; ++i)
    out.d[i] = conj_value(a.d[i]);
  return out;
}

template <class T> Jet<T> add_constant(const Jet<T> &a, const T &c) {
  Jet<T> out = a;
  if (out.n > 0)
    out.d[0] = out.d[0] + c;
  return out;
}

/// Jet of p / r at the point r: (-1)^j j! p / r^(j+1).
template <class T> Jet<T> inverse_power_jet(double p, double r, int count) {
  Jet<T> out(count);
  T term = T(p) / T(r);
  for (int j = 0; j < count; ++j) {
    out.d[j] = term;
    term = term * (-double(j + 1)) / T(r);
  }
  return out;
}

/// Jet of c1 / r^2 at r.
template <class T> Jet<T> inverse_square_jet(double c1, double r, int count) {
  Jet<T> out(count);
  const T r2 = T(r) * T(r);
  T term = T(c1) / r2;
  for (int j = 0; j < count; ++j) {
    out.d[j] = term;
    term = term * (-double(j + 2)) / T(r);
  }
  return out;
}

} // namespace susyhydra
