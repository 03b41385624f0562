#include "susyhydra/specfun.hpp"

#include "susyhydra/dd_math.hpp"
#include "susyhydra/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace susyhydra::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

bool is_nonpositive_integer(const CDD &z) {
  return z.im.hi == 0.0 && z.im.lo == 0.0 && z.re.lo == 0.0 &&
         z.re.hi <= 0.0 && z.re.hi == std::floor(z.re.hi);
}

void require_finite(cplx z, const char *what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgumentError(std::string(what) + " is not finite");
}

void require_c(int c) {
  if (c < 1)
    throw InvalidArgumentError("second parameter c must be a positive integer");
}

double mag(const CDD &z) { return abs_approx(z); }

// Lanczos, g = 7, n = 9.
cplx lanczos_ln_gamma(cplx w) {
  static const std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const cplx x = w - 1.0;
  cplx acc = p[0];
  for (int i = 1; i < 9; ++i)
    acc += p[i] / (x + double(i));
  const cplx t = x + 7.5;
  return 0.91893853320467274178 + (x + 0.5) * std::log(t) - t + std::log(acc);
}

CDD pochhammer(const CDD &a, int n) {
  CDD p(1.0);
  for (int j = 0; j < n; ++j)
    p *= a + CDD(double(j));
  return p;
}

// ---- small |z| -------------------------------------------------------------

CDD m_series(const CDD &a, const CDD &c, const CDD &z) {
  CDD term(1.0), sum(1.0);
  const double zmag = mag(z);
  for (int n = 0; n < 20000; ++n) {
    const CDD an = a + CDD(double(n));
    if (an.re.hi == 0.0 && an.im.hi == 0.0 && an.re.lo == 0.0 &&
        an.im.lo == 0.0)
      return sum;
    term = term * an * z / ((c + CDD(double(n))) * double(n + 1));
    sum += term;
    if (n > zmag && mag(term) < 1e-34 * mag(sum))
      return sum;
  }
  throw ConvergenceError("Kummer M series did not converge, last term " +
                         std::to_string(mag(term)));
}

// U(a, n+1, z) from the logarithmic limit formula. rg, when given, is
// 1/Gamma(a); jets pass it so that all orders share one rounding.
CDD u_log_series(const CDD &a, int c, const CDD &z, const CDD *rg = nullptr) {
  if (is_nonpositive_integer(a)) {
    const int m = int(-a.re.hi);
    CDD v = pochhammer(CDD(double(c)), m) * m_series(a, CDD(double(c)), z);
    return (m % 2) ? -v : v;
  }
  const int n = c - 1;
  const CDD lz = ddm::log(z);
  const CDD konst = lz + ddm::digamma(a) + CDD(ddm::euler_gamma * 2.0);

  CDD t(1.0), ha(0.0);
  DD hk(0.0), hnk(0.0);
  for (int j = 1; j <= n; ++j)
    hnk += DD(1.0) / DD(double(j));
  CDD sum1 = konst - CDD(hnk);
  const double zmag = mag(z);
  int k = 0;
  for (; k < 20000; ++k) {
    const CDD ak = a + CDD(double(k));
    ha += CDD(1.0) / ak;
    hk += DD(1.0) / DD(double(k + 1));
    hnk += DD(1.0) / DD(double(n + k + 1));
    t = t * ak * z / (double(n + 1 + k) * double(k + 1));
    const CDD contrib = t * (konst + ha - CDD(hk + hnk));
    sum1 += contrib;
    if (k > zmag && mag(contrib) < 1e-34 * mag(sum1))
      break;
  }
  if (k == 20000)
    throw ConvergenceError("Tricomi U log series did not converge");

  // Gamma(a)/Gamma(a-n) = (a-1)(a-2)...(a-n)
  CDD ratio(1.0);
  for (int j = 1; j <= n; ++j)
    ratio *= a - CDD(double(j));
  DD nfact(1.0);
  for (int j = 2; j <= n; ++j)
    nfact *= DD(double(j));
  CDD part1 = ratio * sum1 / nfact;
  if ((n + 1) % 2)
    part1 = -part1;

  CDD part2(0.0);
  if (n > 0) {
    const CDD zinv = CDD(1.0) / z;
    CDD zp = zinv;
    DD kfact(1.0); // (k-1)!
    for (int kk = 1; kk <= n; ++kk) {
      DD nk(1.0); // (n-k)!
      for (int j = 2; j <= n - kk; ++j)
        nk *= DD(double(j));
      const CDD p = pochhammer(CDD(double(1 + kk)) - a, n - kk);
      part2 += zp * p * kfact / nk;
      zp *= zinv;
      kfact *= DD(double(kk));
    }
  }
  return (rg ? *rg : CDD(rgamma(to_complex(a)))) * (part1 + part2);
}

// ---- large |z| -------------------------------------------------------------

struct AsymSum {
  cplx value;
  double err; // absolute, in units of the series (leading term 1)
};

// sum_s (p)_s (q)_s / s! x^s, truncated at the smallest term.
AsymSum asym_series(cplx p, cplx q, cplx x) {
  cplx term = 1.0, sum = 1.0;
  double last = 1.0;
  for (int s = 0; s < 400; ++s) {
    const cplx next = term * (p + double(s)) * (q + double(s)) * x / double(s + 1);
    const double nm = std::abs(next);
    if (nm == 0.0)
      return {sum, 0.0};
    if (nm > last)
      return {sum, last};
    sum += next;
    term = next;
    last = nm;
    if (nm < 1e-18 * std::abs(sum))
      return {sum, nm};
  }
  return {sum, last};
}

cplx safe_exp(cplx w) {
  if (w.real() > 700.0)
    throw DomainError("hypergeometric value overflows double range");
  return std::exp(w);
}

// M asymptotic, relative error estimate in err.
cplx m_asymptotic(cplx a, int c, cplx z, double &err) {
  const cplx lz = std::log(z);
  const double lgc = std::lgamma(double(c));
  const cplx ca = double(c) - a;
  cplx t1 = 0.0, t2 = 0.0;
  double e1 = 0.0, e2 = 0.0;
  if (!is_nonpositive_integer(a)) {
    const AsymSum s1 = asym_series(ca, 1.0 - a, 1.0 / z);
    const cplx pref = safe_exp(z + (a - double(c)) * lz - ln_gamma(a) + lgc);
    t1 = pref * s1.value;
    e1 = std::abs(pref) * s1.err;
  }
  if (!is_nonpositive_integer(ca)) {
    const AsymSum s2 = asym_series(a, a - double(c) + 1.0, -1.0 / z);
    const cplx ipa = cplx(0.0, z.imag() >= 0.0 ? kPi : -kPi) * a;
    const cplx pref = safe_exp(ipa - a * lz - ln_gamma(ca) + lgc);
    t2 = pref * s2.value;
    e2 = std::abs(pref) * s2.err;
  }
  const cplx v = t1 + t2;
  err = (e1 + e2) / std::abs(v);
  return v;
}

cplx u_asymptotic(cplx a, int c, cplx z, double &err) {
  const AsymSum s = asym_series(a, a - double(c) + 1.0, -1.0 / z);
  err = s.err / std::abs(s.value);
  return safe_exp(-a * std::log(z)) * s.value;
}

// Integrate z w'' + (c - z) w' - a w = 0 along the segment z0 -> z1 by
// Taylor steps in double-double. w, dw are updated in place.
void kummer_ode(const CDD &a, int c, CDD z0, const CDD &z1, CDD &w, CDD &dw,
                double max_step) {
  const CDD span = z1 - z0;
  const double len = mag(span);
  const double rmin = std::min(mag(z0), mag(z1));
  const double h_max = std::min(max_step, 0.5 * rmin);
  const int steps = std::max(1, int(std::ceil(len / h_max)));
  const CDD h = span / double(steps);
  const CDD cc{double(c)};
  for (int st = 0; st < steps; ++st) {
    CDD t0 = w, t1 = dw * h; // scaled coefficients t_n h^n
    CDD nw = t0 + t1, ndw = dw;
    const CDD zh = z0 / h; // z_p / h
    int small = 0;
    for (int n = 0; n < 600; ++n) {
      // z_p (n+2)(n+1) t_{n+2} = (n+a) t_n - (n+1)(n+c-z_p) t_{n+1}
      // in terms of T_n = t_n h^n:
      // T_{n+2} = [(n+a) T_n h - (n+1)(n+c-z_p) T_{n+1}] / ((n+2)(n+1) z_p/h)
      const CDD num = (a + CDD(double(n))) * t0 * h -
                      (cc + CDD(double(n)) - z0) * t1 * double(n + 1);
      const CDD t2 = num / (zh * double((n + 2) * (n + 1)));
      nw += t2;
      ndw += t2 * double(n + 2) / h;
      t0 = t1;
      t1 = t2;
      const double scale = std::max(mag(nw), mag(ndw * h));
      if (mag(t2) < 1e-34 * scale) {
        if (++small == 2)
          break;
      } else {
        small = 0;
      }
      if (n == 599)
        throw ConvergenceError("Kummer ODE continuation did not converge");
    }
    w = nw;
    dw = ndw;
    z0 = z0 + h;
  }
}

CDD rescale(const CDD &z, double radius) { return z * (radius / mag(z)); }

} // namespace

// ---- Gamma family ----------------------------------------------------------

cplx ln_gamma(cplx z) {
  require_finite(z, "argument");
  if (is_nonpositive_integer(z))
    throw PoleError("ln_gamma pole at a non-positive integer");
  if (z.real() >= 0.5)
    return lanczos_ln_gamma(z);
  const int m = int(std::ceil(0.5 - z.real()));
  cplx shift = 0.0;
  for (int j = 0; j < m; ++j)
    shift += std::log(z + double(j));
  return lanczos_ln_gamma(z + double(m)) - shift;
}

cplx digamma(cplx z) {
  require_finite(z, "argument");
  return to_complex(ddm::digamma(CDD(z)));
}

cplx gamma(cplx z) { return std::exp(ln_gamma(z)); }

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z))
    return 0.0;
  return std::exp(-ln_gamma(z));
}

// ---- hypergeometric --------------------------------------------------------

CDD kummer_m_dd(const CDD &a, int c, const CDD &z, const Options &opt) {
  require_c(c);
  const double zm = mag(z);
  if (zm <= opt.crossover)
    return m_series(a, CDD(double(c)), z);
  double err = 0.0;
  const cplx v = m_asymptotic(to_complex(a), c, to_complex(z), err);
  if (err <= opt.asymptotic_tol)
    return CDD(v);
  // Growing or oscillating: forward integration from the crossover circle
  // is stable.
  const CDD z0 = rescale(z, opt.crossover);
  CDD w = m_series(a, CDD(double(c)), z0);
  CDD dw = a / double(c) * m_series(a + CDD(1.0), CDD(double(c + 1)), z0);
  kummer_ode(a, c, z0, z, w, dw, opt.max_step);
  return w;
}

CDD tricomi_u_dd(const CDD &a, int c, const CDD &z, const Options &opt) {
  require_c(c);
  if (z.re.hi == 0.0 && z.im.hi == 0.0)
    throw DomainError("Tricomi U is singular at z = 0");
  const double zm = mag(z);
  if (zm <= opt.crossover)
    return u_log_series(a, c, z);
  double err = 0.0;
  const cplx v = u_asymptotic(to_complex(a), c, to_complex(z), err);
  if (err <= opt.asymptotic_tol)
    return CDD(v);
  CDD w, dw, z0;
  if (z.re.hi > 0.0) {
    // U is recessive outward here, so come in from a radius where the
    // asymptotic series is already accurate.
    double rho = zm;
    for (;;) {
      rho *= 1.25;
      if (rho > 1e5)
        throw ConvergenceError("Tricomi U asymptotic series never reached "
                               "tolerance, estimate " + std::to_string(err));
      z0 = rescale(z, rho);
      double e0 = 0.0, e1 = 0.0;
      const cplx z0c = to_complex(z0);
      const cplx u0 = u_asymptotic(to_complex(a), c, z0c, e0);
      const cplx u1 = u_asymptotic(to_complex(a) + 1.0, c + 1, z0c, e1);
      if (e0 <= opt.asymptotic_tol && e1 <= opt.asymptotic_tol) {
        w = CDD(u0);
        dw = -a * CDD(u1);
        break;
      }
    }
  } else {
    z0 = rescale(z, opt.crossover);
    w = u_log_series(a, c, z0);
    dw = -a * u_log_series(a + CDD(1.0), c + 1, z0);
  }
  kummer_ode(a, c, z0, z, w, dw, opt.max_step);
  return w;
}

cplx kummer_m(cplx a, int c, cplx z, const Options &opt) {
  require_finite(a, "a");
  require_finite(z, "z");
  return to_complex(kummer_m_dd(CDD(a), c, CDD(z), opt));
}

cplx tricomi_u(cplx a, int c, cplx z, const Options &opt) {
  require_finite(a, "a");
  require_finite(z, "z");
  return to_complex(tricomi_u_dd(CDD(a), c, CDD(z), opt));
}

std::pair<cplx, cplx> hypergeometric_derivatives(cplx a, int c, cplx z,
                                                 const Options &opt) {
  require_finite(a, "a");
  require_finite(z, "z");
  require_c(c);
  if (z == 0.0)
    return {a / double(c), cplx(std::nan(""), std::nan(""))};
  return {a / double(c) * kummer_m(a + 1.0, c + 1, z, opt),
          -a * tricomi_u(a + 1.0, c + 1, z, opt)};
}

std::vector<CDD> kummer_m_jet(const CDD &a, int c, const CDD &z, int order,
                              const Options &opt) {
  std::vector<CDD> out(order + 1);
  CDD coef(1.0);
  for (int j = 0; j <= order; ++j) {
    const bool zero = coef.re.hi == 0.0 && coef.im.hi == 0.0;
    out[j] = zero ? CDD(0.0)
                  : coef * kummer_m_dd(a + CDD(double(j)), c + j, z, opt);
    coef = coef * (a + CDD(double(j))) / double(c + j);
  }
  return out;
}

std::vector<CDD> tricomi_u_jet(const CDD &a, int c, const CDD &z, int order,
                               const Options &opt) {
  std::vector<CDD> out(order + 1);
  // Near the origin the orders enter derivatives that cancel strongly, so
  // 1/Gamma(a+j) follows from one rounded 1/Gamma(a) by exact recurrence.
  const bool shared = mag(z) <= opt.crossover && !is_nonpositive_integer(a);
  CDD rg = shared ? CDD(rgamma(to_complex(a))) : CDD(0.0);
  CDD coef(1.0);
  for (int j = 0; j <= order; ++j) {
    const bool zero = coef.re.hi == 0.0 && coef.im.hi == 0.0;
    const CDD aj = a + CDD(double(j));
    if (zero)
      out[j] = CDD(0.0);
    else if (shared)
      out[j] = coef * u_log_series(aj, c + j, z, &rg);
    else
      out[j] = coef * tricomi_u_dd(aj, c + j, z, opt);
    if (shared)
      rg = rg / aj;
    coef = -(coef * (a + CDD(double(j))));
  }
  return out;
}

} // namespace susyhydra::specfun
