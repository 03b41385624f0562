#include "susyhydra/darboux1.hpp"

#include "seed_internal.hpp"
#include "susyhydra/hydrogen.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace susyhydra::darboux1 {

using detail::DJ;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Per-node record of how close u comes to vanishing. check() throws when u
// vanishes, or nearly so, between grid nodes: either alpha M and zeta U
// cancel, or a Newton step from a node lands on a zero on the real axis.
class ZeroWatch {
public:
  explicit ZeroWatch(const GridPtr &grid)
      : grid_(grid), cancel_(grid->size(), 1.0), ratio_(grid->size()) {}

  void record(double r, double cancel, cplx f_ratio) {
    const auto it = std::lower_bound(grid_->nodes().begin(), grid_->nodes().end(), r);
    const std::size_t i = it - grid_->nodes().begin();
    cancel_[i] = cancel;
    ratio_[i] = f_ratio;
  }

  void check(const FactorizationConfig &cfg) const;

private:
  GridPtr grid_;
  std::vector<double> cancel_;
  std::vector<cplx> ratio_; // f'/f
};

void ZeroWatch::check(const FactorizationConfig &cfg) const {
  const RadialGrid &g = *grid_;
  for (std::size_t i = 1; i + 1 < cancel_.size(); ++i) {
    if (cancel_[i] < 1e-6 && cancel_[i] <= cancel_[i - 1] &&
        cancel_[i] <= cancel_[i + 1])
      throw SingularBetaError("seed u has a zero near r = " + num(g[i]) +
                              " (|f| cancels to " + num(cancel_[i]) + ")");
  }
  for (std::size_t i = 0; i + 1 < ratio_.size(); ++i) {
    const double h = g[i + 1] - g[i];
    if (ratio_[i] == 0.0)
      continue;
    cplx z = g[i] - 1.0 / ratio_[i];
    if (z.real() < g[i] || z.real() > g[i + 1] || std::abs(z.imag()) > h)
      continue;
    // refine on f itself; f is analytic in r
    bool converged = false;
    for (int it = 0; it < 30 && !converged; ++it) {
      const auto f = seed_f(cfg, z, 1);
      if (f[1] == 0.0)
        break;
      const cplx step = f[0] / f[1];
      z -= step;
      converged = std::abs(step) <= 1e-13 * std::abs(z);
    }
    if (converged && std::abs(z.imag()) <= 1e-9 * std::abs(z) &&
        z.real() > g.r_min() && z.real() < g.r_max())
      throw SingularBetaError("seed u vanishes at r = " + num(z.real()));
  }
}
} // namespace

FactorizationConfig FactorizationConfig::make(int l, cplx k, cplx alpha,
                                              cplx zeta, bool allow_real_eps) {
  if (l < 0)
    throw InvalidArgumentError("l must be non-negative");
  if (!finite(k) || !finite(alpha) || !finite(zeta))
    throw InvalidArgumentError("k, alpha and zeta must be finite");
  if (k == 0.0)
    throw InvalidArgumentError("k must be non-zero");
  if (alpha == 0.0 && zeta == 0.0)
    throw InvalidArgumentError("alpha and zeta cannot both vanish");
  if (k.imag() == 0.0 && !allow_real_eps)
    throw InvalidArgumentError(
        "Im k = 0 gives a real factorization energy; pass the real-eps "
        "override to allow it");
  FactorizationConfig c;
  c.l = l;
  c.k = k;
  c.alpha = alpha;
  c.zeta = zeta;
  c.allow_real_eps = allow_real_eps;
  return c;
}

GeneralSolutionParams GeneralSolutionParams::make(cplx kappa, cplx C, cplx D) {
  if (!finite(kappa) || !finite(C) || !finite(D))
    throw InvalidArgumentError("kappa, C and D must be finite");
  if (kappa == 0.0)
    throw InvalidArgumentError("kappa must be non-zero");
  if (C == 0.0 && D == 0.0)
    throw InvalidArgumentError("C and D cannot both vanish");
  return {kappa, C, D};
}

std::vector<cplx> seed_f(const FactorizationConfig &cfg, cplx r, int order) {
  const cplx a = cfg.a();
  const int c = cfg.c();
  const cplx two_k = 2.0 * cfg.k;
  const cplx z = two_k * r;
  const auto conn = detail::seed_connection(cfg);
  const cplx cm = conn.active ? 0.0 : cfg.alpha;
  const cplx cu = conn.active ? conn.theta : cfg.zeta;
  // W^(i)(z) = d^i/dz^i U(c-a, c, -z) = (c-a)_i U(c-a+i, c+i, -z)
  std::vector<cplx> w;
  cplx ez = 0.0;
  if (conn.active) {
    const cplx b = double(c) - a;
    cplx p = 1.0;
    for (int i = 0; i <= order; ++i) {
      w.push_back(p == 0.0 ? 0.0 : p * specfun::tricomi_u(b + double(i), c + i, -z));
      p *= b + double(i);
    }
    ez = std::exp(z);
  }
  std::vector<cplx> out(order + 1, 0.0);
  cplx chain = 1.0, coef_m = 1.0, coef_u = 1.0;
  for (int j = 0; j <= order; ++j) {
    cplx v = 0.0;
    if (cm != 0.0 && coef_m != 0.0)
      v += cm * coef_m * specfun::kummer_m(a + double(j), c + j, z);
    if (cu != 0.0 && coef_u != 0.0)
      v += cu * coef_u * specfun::tricomi_u(a + double(j), c + j, z);
    if (conn.active) {
      cplx acc = 0.0;
      double binom = 1.0;
      for (int i = 0; i <= j; ++i) {
        acc += binom * w[i];
        binom = binom * (j - i) / (i + 1);
      }
      v += conn.coef_v * ez * acc;
    }
    out[j] = chain * v;
    chain *= two_k;
    coef_m *= (a + double(j)) / double(c + j);
    coef_u *= -(a + double(j));
  }
  return out;
}

SampledState seed_u(const FactorizationConfig &cfg, const GridPtr &grid) {
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options opt;
  return detail::sample_gauged(grid, "u", 2,
                               [&](double r) { return seed.gauged(r, opt); });
}

BetaResult beta(const FactorizationConfig &cfg, const GridPtr &grid) {
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options opt;
  ZeroWatch watch(grid);
  BetaResult out;
  out.beta = detail::sample_plain(grid, "beta", 2, [&](double r) {
    const auto sj = detail::seed_jets(seed, r, opt);
    watch.record(r, sj.cancel, to_complex(sj.f_ratio.d[0]));
    return sj.beta;
  });
  watch.check(cfg);
  out.omega_cap = detail::sample_plain(grid, "Omega", 1, [&](double r) {
    return -detail::seed_jets(seed, r, opt).f_ratio;
  });
  return out;
}

SampledState partner_potential(const FactorizationConfig &cfg,
                               const GridPtr &grid) {
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options opt;
  ZeroWatch watch(grid);
  auto v = detail::sample_plain(grid, "V_partner", 2, [&](double r) {
    const auto sj = detail::seed_jets(seed, r, opt);
    watch.record(r, sj.cancel, to_complex(sj.f_ratio.d[0]));
    return detail::coulomb_jet(cfg.l, r, 4) + sj.beta.derivative() * 2.0;
  });
  watch.check(cfg);
  return v;
}

SampledState apply_b(const FactorizationConfig &cfg, const SampledState &phi) {
  if (phi.derivative_order() < 1)
    throw InvalidArgumentError("apply_b needs a state with its first derivative");
  const BetaResult b = beta(cfg, phi.grid);
  const int order = std::min(phi.derivative_order() - 1, 2);
  SampledState out;
  out.grid = phi.grid;
  out.label = "B(" + phi.label + ")";
  const std::size_t n = phi.size();
  out.values.resize(n);
  out.derivatives.assign(order, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) {
    // W(u, phi)/u = phi' - (u'/u) phi with u'/u = -beta.
    const cplx bt = b.beta.values[i];
    const cplx p0 = phi.values[i], p1 = phi.derivatives[0][i];
    out.values[i] = p1 + bt * p0;
    if (order >= 1) {
      const cplx b1 = b.beta.derivatives[0][i];
      const cplx p2 = phi.derivatives[1][i];
      out.derivatives[0][i] = p2 + b1 * p0 + bt * p1;
      if (order >= 2) {
        const cplx b2 = b.beta.derivatives[1][i];
        const cplx p3 = phi.derivatives[2][i];
        out.derivatives[1][i] = p3 + b2 * p0 + 2.0 * b1 * p1 + bt * p2;
      }
    }
  }
  return out;
}

SampledState general_solution(const GeneralSolutionParams &params, int l,
                              const GridPtr &grid) {
  if (l < 0)
    throw InvalidArgumentError("l must be non-negative");
  const auto sol =
      detail::KummerSolution::general(l, params.kappa, params.C, params.D);
  const specfun::Options opt;
  return detail::sample_gauged(grid, "phi", 3,
                               [&](double r) { return sol.gauged(r, opt); });
}

SampledState mapped_bound_state(const FactorizationConfig &cfg, int n,
                                const GridPtr &grid) {
  const auto qn = hydrogen::QuantumNumbers::make(n, cfg.l);
  const double cn = hydrogen::normalization_constant(qn, grid);
  const auto psi = detail::KummerSolution::hydrogen(qn.n, qn.l);
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options opt;
  ZeroWatch watch(grid);
  auto out = detail::sample_gauged(
      grid, "Psi_" + std::to_string(n), 2, [&](double r) {
        const auto sj = detail::seed_jets(seed, r, opt);
        watch.record(r, sj.cancel, to_complex(sj.f_ratio.d[0]));
        auto g = detail::apply_b_gauged(psi.gauged(r, opt), sj, seed.kappa,
                                        cfg.l, r);
        g.t = g.t * CDD(cn);
        return g;
      });
  watch.check(cfg);
  return out;
}

SampledState mapped_general_state(const FactorizationConfig &cfg,
                                  const GeneralSolutionParams &params,
                                  const GridPtr &grid) {
  if (std::abs(params.kappa - cfg.k) <= 1e-14 * std::abs(cfg.k))
    throw CollisionError("kappa = k makes B phi vanish identically; the "
                         "eps eigenfunction is the kernel state 1/u");
  const auto phi = detail::KummerSolution::general(cfg.l, params.kappa,
                                                   params.C, params.D);
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options opt;
  ZeroWatch watch(grid);
  auto out = detail::sample_gauged(grid, "Bphi", 2, [&](double r) {
    const auto sj = detail::seed_jets(seed, r, opt);
    watch.record(r, sj.cancel, to_complex(sj.f_ratio.d[0]));
    return detail::apply_b_gauged(phi.gauged(r, opt), sj, seed.kappa, cfg.l, r);
  });
  watch.check(cfg);
  return out;
}

SampledState kernel_state(const FactorizationConfig &cfg, const GridPtr &grid) {
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options opt;
  const detail::Gauge inv{-double(cfg.l + 1), -seed.kappa};
  ZeroWatch watch(grid);
  auto out = detail::sample_gauged(grid, "Psi_eps", 2, [&](double r) {
    double scale = 0.0;
    const DJ f = seed.jet(r, opt, DJ::kMax, &scale);
    const double fm = abs_approx(f.d[0]);
    if (fm == 0.0)
      throw SingularBetaError("seed u vanishes at r = " + num(r));
    watch.record(r, fm / scale, to_complex(f.d[1] / f.d[0]));
    return detail::Gauged{inv, DJ::constant(CDD(1.0), DJ::kMax) / f};
  });
  watch.check(cfg);
  return out;
}

// ---- classification --------------------------------------------------------

std::string to_string(CaseLabel c) {
  switch (c) {
  case CaseLabel::A: return "A";
  case CaseLabel::B: return "B";
  case CaseLabel::C: return "C";
  case CaseLabel::D: return "D";
  case CaseLabel::E: return "E";
  case CaseLabel::singular: return "singular";
  case CaseLabel::unclassified: return "unclassified";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::yes: return "yes";
  case Verdict::no: return "no";
  case Verdict::undetermined: return "undetermined";
  }
  return "?";
}

cplx theta(const FactorizationConfig &cfg, int sign) {
  const cplx a = cfg.a();
  const cplx ca = double(cfg.c()) - a; // l + 1 + 1/k
  const cplx ph = std::exp(cplx(0.0, sign >= 0 ? kPi : -kPi) * a);
  return cfg.zeta + cfg.alpha * std::exp(std::lgamma(double(cfg.c())) -
                                         specfun::ln_gamma(ca)) *
                        ph;
}

namespace {

// Winding number of f around a circle; nullopt if the sampling is too coarse
// to resolve the phase.
std::optional<int> winding(const FactorizationConfig &cfg, cplx centre,
                           double radius) {
  const int m = 96;
  double total = 0.0;
  cplx prev = seed_f(cfg, centre + radius, 0)[0];
  for (int i = 1; i <= m; ++i) {
    const cplx pt = centre + std::polar(radius, 2.0 * kPi * i / m);
    const cplx cur = seed_f(cfg, pt, 0)[0];
    const double step = std::arg(cur / prev);
    if (std::abs(step) > 0.5 * kPi)
      return std::nullopt;
    total += step;
    prev = cur;
  }
  return int(std::lround(total / (2.0 * kPi)));
}

} // namespace

C0Scan scan_c0(const FactorizationConfig &cfg, const ScanOptions &opt) {
  C0Scan out;
  out.r_min = opt.r_min;
  out.r_max = opt.r_max > 0.0 ? opt.r_max
                              : std::max(160.0, 60.0 / std::abs(cfg.k));
  const auto grid = RadialGrid::geometric(out.r_min, out.r_max, opt.nodes);
  const auto seed = detail::seed_solution(cfg);
  const specfun::Options sopt;
  std::vector<double> ratio(grid->size());
  detail::for_each_node(grid->size(), [&](std::size_t i) {
    double scale = 0.0;
    const DJ f = seed.jet((*grid)[i], sopt, 1, &scale);
    ratio[i] = scale > 0.0 ? abs_approx(f.d[0]) / scale : 0.0;
  });

  std::vector<std::size_t> cands;
  out.min_ratio = 1.0;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    out.min_ratio = std::min(out.min_ratio, ratio[i]);
    const bool left = i == 0 || ratio[i] <= ratio[i - 1];
    const bool right = i + 1 == ratio.size() || ratio[i] <= ratio[i + 1];
    if (left && right && ratio[i] < 0.25)
      cands.push_back(i);
  }
  std::sort(cands.begin(), cands.end(),
            [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });
  if (cands.size() > 24)
    cands.resize(24);
  out.candidates = int(cands.size());
  out.resolution = 1e-9;

  bool ambiguous = false;
  for (const std::size_t i : cands) {
    const double ri = (*grid)[i];
    cplx r = ri;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const auto f = seed_f(cfg, r, 1);
      if (f[1] == 0.0)
        break;
      const cplx step = f[0] / f[1];
      r -= step;
      if (!finite(r) || std::abs(r) > 10.0 * out.r_max || r.real() <= 0.0)
        break;
      if (std::abs(step) < 1e-14 * std::abs(r)) {
        converged = true;
        break;
      }
    }
    if (converged) {
      const double dist = std::abs(r.imag());
      if (dist <= out.resolution * std::max(1.0, r.real())) {
        if (r.real() > out.r_min && r.real() < out.r_max) {
          out.verdict = Verdict::no;
          out.zero_radius = r.real();
          return out;
        }
        continue;
      }
      // The zero found is off the axis; nothing else may hide inside the
      // disc that reaches half way to it.
      const auto w = winding(cfg, r.real(), 0.5 * dist);
      if (!w || *w != 0)
        ambiguous = true;
    } else {
      const double h = ri * grid->dt() * 2.0;
      const auto w = winding(cfg, ri, h);
      if (!w || *w != 0)
        ambiguous = true;
    }
  }
  out.verdict = ambiguous ? Verdict::undetermined : Verdict::yes;
  return out;
}

namespace {

// sign of the e^{i pi a} branch in theta: numerically when k1 < 0, from the
// principal branch (sign of Im k) otherwise.
int select_theta_sign(const FactorizationConfig &cfg, cplx tp, cplx tm) {
  const int branch = cfg.k.imag() >= 0.0 ? 1 : -1;
  if (cfg.k.real() >= 0.0 || cfg.alpha == 0.0)
    return branch;
  // f ~ theta z^{-a} once e^{2 k r} is negligible, and U carries z^{-a}
  // with its full asymptotic series, so f/U tends to theta.
  const double r = 25.0 / std::abs(cfg.k.real());
  const cplx z = 2.0 * cfg.k * r;
  const cplx ratio = cfg.zeta + cfg.alpha * specfun::kummer_m(cfg.a(), cfg.c(), z) /
                                    specfun::tricomi_u(cfg.a(), cfg.c(), z);
  return std::abs(ratio - tp) <= std::abs(ratio - tm) ? 1 : -1;
}

bool theta_vanishes(const FactorizationConfig &cfg, cplx th) {
  const cplx m_part = th - cfg.zeta;
  return std::abs(th) <= 1e-8 * (std::abs(cfg.zeta) + std::abs(m_part));
}

// Whether u grows like e^{kr} (the M exponential survives at infinity).
bool seed_grows_with_m(const FactorizationConfig &cfg, cplx th) {
  if (cfg.alpha == 0.0)
    return false;
  if (cfg.k.real() > 0.0)
    return true;
  return theta_vanishes(cfg, th);
}

} // namespace

ClassificationReport classify_case(const FactorizationConfig &cfg,
                                   const ScanOptions &opt) {
  ClassificationReport rep;
  rep.theta_plus = theta(cfg, 1);
  rep.theta_minus = theta(cfg, -1);
  rep.selected_sign = select_theta_sign(cfg, rep.theta_plus, rep.theta_minus);
  rep.theta = rep.selected_sign > 0 ? rep.theta_plus : rep.theta_minus;

  const bool a0 = cfg.alpha != 0.0, z0 = cfg.zeta != 0.0;
  const double k1 = cfg.k.real();
  if (a0 && !z0) {
    rep.case_label = CaseLabel::A;
    rep.kernel_normalizable = false;
  } else if (!a0 && z0) {
    if (k1 > 0.0) {
      rep.case_label = CaseLabel::B;
      rep.kernel_normalizable = false;
    } else if (k1 < 0.0) {
      rep.case_label = CaseLabel::C;
      rep.kernel_normalizable = true;
    } else {
      rep.case_label = CaseLabel::unclassified;
    }
  } else {
    rep.scan = scan_c0(cfg, opt);
    if (rep.scan.verdict == Verdict::undetermined)
      throw UndeterminedError(
          "zero scan of f could not certify (alpha, zeta) in C0 on [" +
          num(rep.scan.r_min) + ", " + num(rep.scan.r_max) + "]");
    const bool vanish = theta_vanishes(cfg, rep.theta);
    if (rep.scan.verdict == Verdict::no) {
      rep.case_label = CaseLabel::singular;
      rep.kernel_normalizable = false;
    } else if (k1 < 0.0) {
      rep.case_label = vanish ? CaseLabel::E : CaseLabel::D;
      rep.kernel_normalizable = !vanish;
    } else if (k1 > 0.0) {
      rep.case_label = vanish ? CaseLabel::unclassified : CaseLabel::D;
      // u still grows at both ends, whatever theta does.
      rep.kernel_normalizable = true;
    } else {
      rep.case_label = CaseLabel::unclassified;
    }
  }
  rep.hydrogen_levels_listed = 6;
  for (int n = cfg.l + 1; n <= cfg.l + rep.hydrogen_levels_listed; ++n)
    rep.spectrum.emplace_back(hydrogen::energy(n), 0.0);
  if (rep.kernel_normalizable)
    rep.spectrum.push_back(cfg.epsilon());
  return rep;
}

std::string to_json(const ClassificationReport &rep) {
  using nlohmann::json;
  auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
  json spec = json::array();
  for (const auto &e : rep.spectrum)
    spec.push_back(cj(e));
  const bool scanned = rep.scan.r_max > 0.0;
  json j;
  j["case"] = to_string(rep.case_label);
  j["theta_plus"] = cj(rep.theta_plus);
  j["theta_minus"] = cj(rep.theta_minus);
  j["selected_sign"] = rep.selected_sign > 0 ? "+" : "-";
  j["in_c0"] = scanned ? to_string(rep.scan.verdict) : "not_applicable";
  j["kernel_normalizable"] = rep.kernel_normalizable;
  j["spectrum"] = spec;
  j["spectrum_note"] = "hydrogen levels -1/n^2 for n >= l+1 (first " +
                       std::to_string(rep.hydrogen_levels_listed) +
                       " listed), plus eps when the kernel state is normalizable";
  if (scanned) {
    json s;
    s["r_min"] = rep.scan.r_min;
    s["r_max"] = rep.scan.r_max;
    s["candidates"] = rep.scan.candidates;
    s["min_ratio"] = rep.scan.min_ratio;
    s["resolution"] = rep.scan.resolution;
    if (rep.scan.zero_radius)
      s["zero_radius"] = *rep.scan.zero_radius;
    j["scan"] = s;
  }
  return j.dump(2);
}

// ---- asymptotics -----------------------------------------------------------

LeadingTerm leading_asymptotics(const FactorizationConfig &cfg, Regime which,
                                const GeneralSolutionParams *params) {
  const int l = cfg.l;
  const cplx k = cfg.k;
  const cplx a = cfg.a();
  const int sign = select_theta_sign(cfg, theta(cfg, 1), theta(cfg, -1));
  const cplx th = theta(cfg, sign);
  const bool grows = seed_grows_with_m(cfg, th);
  const double lg2l1 = std::lgamma(2.0 * l + 1.0);
  const double lg2l2 = std::lgamma(2.0 * l + 2.0);

  switch (which) {
  case Regime::kernel_origin: {
    if (cfg.zeta == 0.0)
      return {1.0 / cfg.alpha, -double(l + 1), 0.0};
    const cplx amp = std::exp(double(2 * l + 1) * std::log(2.0 * k) +
                              specfun::ln_gamma(a) - lg2l1) /
                     cfg.zeta;
    return {amp, double(l), 0.0};
  }
  case Regime::kernel_infinity: {
    if (grows) {
      const cplx amp = std::exp((double(l + 1) + 1.0 / k) * std::log(2.0 * k) +
                                specfun::ln_gamma(a) - lg2l2) /
                       cfg.alpha;
      return {amp, 1.0 / k, -k};
    }
    const cplx t = cfg.alpha == 0.0 ? cfg.zeta : th;
    if (t == 0.0)
      throw CaseMismatchError("no kernel asymptotic branch for theta = 0");
    const cplx amp = std::exp((double(l + 1) - 1.0 / k) * std::log(2.0 * k)) / t;
    return {amp, -1.0 / k, k};
  }
  case Regime::mapped_origin: {
    if (!params || params->D == 0.0)
      throw CaseMismatchError("the origin branch needs a general solution with D != 0");
    const cplx kap = params->kappa;
    const cplx base = params->D * std::exp(lg2l1 - specfun::ln_gamma(double(l + 1) - 1.0 / kap) -
                                           double(2 * l + 1) * std::log(2.0 * kap));
    if (cfg.zeta == 0.0)
      return {-double(2 * l + 1) * base, -double(l + 1), 0.0};
    // u and phi both start as r^-l with the same O(r) Frobenius term, so
    // the r^-l part of W(u, phi)/u cancels. W' = (kap^2 - k^2) u phi fixes
    // what is left.
    if (l >= 1)
      return {(kap * kap - k * k) / double(1 - 2 * l) * base, double(1 - l), 0.0};
    // l = 0: W(0) from the O(r) terms of r e^{-kr} U(a, 2, 2kr) and alpha M.
    const cplx ak = a, aq = 1.0 - 1.0 / kap;
    const cplx d = (k - kap) -
                   2.0 * (std::log(2.0 * kap) - std::log(2.0 * k) +
                          specfun::digamma(aq) - specfun::digamma(ak)) +
                   2.0 * kap * std::exp(specfun::ln_gamma(aq)) * params->C / params->D -
                   2.0 * k * std::exp(specfun::ln_gamma(ak)) * cfg.alpha / cfg.zeta;
    return {d * base, 0.0, 0.0};
  }
  case Regime::mapped_infinity: {
    if (!params || params->D != 0.0)
      throw CaseMismatchError("the infinity branch needs a general solution with D = 0");
    const cplx kap = params->kappa;
    if (std::abs(kap - k) <= 1e-14 * std::abs(k))
      throw CaseMismatchError("kappa = k has no mapped state");
    if (kap.real() == 0.0)
      throw CaseMismatchError("the infinity branch needs Re kappa != 0");
    const cplx beta_inf = grows ? -k : k;
    if (kap.real() > 0.0) {
      const cplx amp = params->C * (kap + beta_inf) *
                       std::exp(lg2l2 -
                                (double(l + 1) + 1.0 / kap) * std::log(2.0 * kap) -
                                specfun::ln_gamma(double(l + 1) - 1.0 / kap));
      return {amp, -1.0 / kap, kap};
    }
    const cplx amp = params->C * (beta_inf - kap) *
                     std::exp(lg2l2 - specfun::ln_gamma(double(l + 1) + 1.0 / kap) -
                              (double(l + 1) - 1.0 / kap) * std::log(-2.0 * kap));
    return {amp, 1.0 / kap, -kap};
  }
  }
  throw CaseMismatchError("unknown regime");
}

} // namespace susyhydra::darboux1
