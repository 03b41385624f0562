#pragma once

// Pointwise double-double evaluation shared by the transform modules.
//
// A radial function is carried as g(r) * T(r) with the gauge
// g = r^p exp(-s r) evaluated in double and T a Jet<CDD>. Derivatives act
// on T as D T = T' + L T with L = g'/g = p/r - s, so the power-law and
// exponential pieces that cancel near the origin never reach double
// arithmetic.

#include "susyhydra/dd_math.hpp"
#include "susyhydra/errors.hpp"
#include "susyhydra/grid.hpp"
#include "susyhydra/jet.hpp"
#include "susyhydra/specfun.hpp"

#include <cmath>
#include <exception>
#include <string>

namespace susyhydra::detail {

using DJ = Jet<CDD>;
using CJ = Jet<cplx>;

struct Gauge {
  double p = 0.0;
  CDD s;
};

inline cplx gauge_value(const Gauge &g, double r) {
  return std::exp(g.p * std::log(r) - to_complex(g.s) * r);
}

inline DJ gauge_log_derivative(const Gauge &g, double r, int count) {
  DJ L = inverse_power_jet<CDD>(g.p, r, count);
  L.d[0] = L.d[0] - g.s;
  return L;
}

inline DJ apply_d(const DJ &t, const DJ &L) { return t.derivative() + L * t; }

struct Gauged {
  Gauge gauge;
  DJ t;
};

/// Derivatives 0..order of g*T rounded to double.
inline std::vector<cplx> gauged_derivatives(const Gauged &f, double r,
                                            int order) {
  std::vector<cplx> out;
  const cplx g = gauge_value(f.gauge, r);
  DJ cur = f.t;
  const DJ L = gauge_log_derivative(f.gauge, r, DJ::kMax);
  for (int j = 0; j <= order; ++j) {
    if (cur.n == 0)
      throw InvalidArgumentError("derivative order exceeds the available jet");
    out.push_back(g * to_complex(cur.d[0]));
    if (j < order)
      cur = apply_d(cur, L);
  }
  return out;
}

inline CDD cdd(cplx z) { return CDD(z); }

/// C M(a, c, z) + D U(a, c, z) + E e^z U(c - a, c, -z) with c = 2l+2 and
/// z = 2 kappa r, as a jet in r. The last term is the second solution
/// recessive at infinity when Re kappa < 0.
struct KummerSolution {
  int l = 0;
  CDD kappa;
  CDD a;
  CDD coef_m;
  CDD coef_u;
  CDD coef_v;
  bool use_m = true;
  bool use_u = false;
  bool use_v = false;

  Gauge gauge() const { return {double(l + 1), kappa}; }

  static KummerSolution hydrogen(int n, int l) {
    KummerSolution s;
    s.l = l;
    s.kappa = CDD(DD(1.0) / DD(double(n)));
    s.a = CDD(double(l + 1 - n));
    s.coef_m = CDD(1.0);
    s.coef_u = CDD(0.0);
    s.use_m = true;
    s.use_u = false;
    return s;
  }

  static KummerSolution general(int l, cplx kappa, cplx cm, cplx cu) {
    KummerSolution s;
    s.l = l;
    s.kappa = CDD(kappa);
    s.a = CDD(double(l + 1)) - CDD(1.0) / s.kappa;
    // kappa = 1/n only holds to rounding in double; snap so that M
    // terminates instead of picking up a 1e-16 e^{2 kappa r} tail.
    const double n = std::round(1.0 / kappa.real());
    if (kappa.imag() == 0.0 && n >= l + 1 &&
        std::abs(kappa.real() * n - 1.0) <= 1e-14) {
      s.kappa = CDD(DD(1.0) / DD(n));
      s.a = CDD(double(l + 1) - n);
    }
    s.coef_m = CDD(cm);
    s.coef_u = CDD(cu);
    s.use_m = cm != 0.0;
    s.use_u = cu != 0.0;
    return s;
  }

  /// When scale is given it receives |C M| + |D U| at the point, the size
  /// against which cancellation in the value is judged.
  DJ jet(double r, const specfun::Options &opt, int count = DJ::kMax,
         double *scale = nullptr) const {
    const CDD two_kappa = kappa * 2.0;
    const CDD z = two_kappa * DD(r);
    const int c = 2 * l + 2;
    DJ out(count);
    std::vector<CDD> m, u, w;
    if (use_m)
      m = specfun::kummer_m_jet(a, c, z, count - 1, opt);
    if (use_u)
      u = specfun::tricomi_u_jet(a, c, z, count - 1, opt);
    if (use_v) {
      // d^j/dz^j e^z W(z) with W(z) = U(c-a, c, -z), W^(i) = (-1)^i U^(i).
      const std::vector<CDD> uw =
          specfun::tricomi_u_jet(CDD(double(c)) - a, c, -z, count - 1, opt);
      const CDD ez = ddm::exp(z);
      w.assign(count, CDD(0.0));
      for (int j = 0; j < count; ++j) {
        CDD acc(0.0);
        for (int i = 0; i <= j; ++i) {
          const CDD wi = (i % 2) ? -uw[i] : uw[i];
          acc += wi * jet_detail::binom(j, i);
        }
        w[j] = ez * acc;
      }
    }
    if (scale) {
      *scale = 0.0;
      if (use_m)
        *scale += abs_approx(coef_m * m[0]);
      if (use_u)
        *scale += abs_approx(coef_u * u[0]);
      if (use_v)
        *scale += abs_approx(coef_v * w[0]);
    }
    CDD chain(1.0);
    for (int j = 0; j < count; ++j) {
      CDD v(0.0);
      if (use_m)
        v += coef_m * m[j];
      if (use_u)
        v += coef_u * u[j];
      if (use_v)
        v += coef_v * w[j];
      out.d[j] = v * chain;
      chain = chain * two_kappa;
    }
    return out;
  }

  Gauged gauged(double r, const specfun::Options &opt) const {
    return {gauge(), jet(r, opt)};
  }
};

/// V_l(r) = l(l+1)/r^2 - 2/r as a jet.
inline DJ coulomb_jet(int l, double r, int count) {
  return inverse_square_jet<CDD>(double(l) * (l + 1), r, count) -
         inverse_power_jet<CDD>(2.0, r, count);
}

/// Runs fn(i) over the grid, in parallel when OpenMP is enabled, and
/// rethrows the first exception.
template <class F> void for_each_node(std::size_t n, F &&fn) {
  std::exception_ptr err = nullptr;
#if defined(SUSYHYDRA_USE_OPENMP)
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (long long i = 0; i < (long long)n; ++i) {
    try {
      fn(std::size_t(i));
    } catch (...) {
#if defined(SUSYHYDRA_USE_OPENMP)
#pragma omp critical
#endif
      if (!err)
        err = std::current_exception();
    }
  }
  if (err)
    std::rethrow_exception(err);
}

/// Samples a gauged function and its first `order` derivatives.
template <class F>
SampledState sample_gauged(const GridPtr &grid, const std::string &label,
                           int order, F &&fn) {
  SampledState s;
  s.grid = grid;
  s.label = label;
  const std::size_t n = grid->size();
  s.values.resize(n);
  s.derivatives.assign(order, std::vector<cplx>(n));
  for_each_node(n, [&](std::size_t i) {
    const double r = (*grid)[i];
    const auto d = gauged_derivatives(fn(r), r, order);
    s.values[i] = d[0];
    for (int j = 1; j <= order; ++j)
      s.derivatives[j - 1][i] = d[j];
  });
  return s;
}

/// Samples a plain jet-valued function and its first `order` derivatives.
template <class F>
SampledState sample_plain(const GridPtr &grid, const std::string &label,
                          int order, F &&fn) {
  SampledState s;
  s.grid = grid;
  s.label = label;
  const std::size_t n = grid->size();
  s.values.resize(n);
  s.derivatives.assign(order, std::vector<cplx>(n));
  for_each_node(n, [&](std::size_t i) {
    const DJ j = fn((*grid)[i]);
    if (j.n <= order)
      throw InvalidArgumentError("derivative order exceeds the available jet");
    s.values[i] = to_complex(j.d[0]);
    for (int k = 1; k <= order; ++k)
      s.derivatives[k - 1][i] = to_complex(j.d[k]);
  });
  return s;
}

inline CJ to_double_jet(const DJ &j) {
  CJ out(j.n);
  for (int i = 0; i < j.n; ++i)
    out.d[i] = to_complex(j.d[i]);
  return out;
}

} // namespace susyhydra::detail
