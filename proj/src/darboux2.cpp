#include "susyhydra/darboux2.hpp"

#include "operators.hpp"
#include "susyhydra/hydrogen.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace susyhydra::darboux2 {

using namespace detail;

std::string to_string(Mode m) {
  return m == Mode::origin_zero ? "origin_zero" : "infinity_zero";
}

SecondOrderConfig SecondOrderConfig::make(const darboux1::FactorizationConfig &base,
                                          Mode mode) {
  const bool a = base.alpha != 0.0, z = base.zeta != 0.0;
  if (mode == Mode::origin_zero && !(a && !z))
    throw CaseMismatchError("origin_zero needs alpha != 0 and zeta = 0");
  if (mode == Mode::infinity_zero && !(!a && z && base.k.real() > 0.0))
    throw CaseMismatchError("infinity_zero needs alpha = 0, zeta != 0 and Re k > 0");
  if (base.epsilon().imag() == 0.0)
    throw DegenerateError("second-order transform needs Im eps != 0");
  SecondOrderConfig c;
  c.base = base;
  c.mode = mode;
  return c;
}

SecondOrderConfig SecondOrderConfig::infer(const darboux1::FactorizationConfig &base) {
  if (base.alpha != 0.0 && base.zeta == 0.0)
    return make(base, Mode::origin_zero);
  if (base.alpha == 0.0 && base.zeta != 0.0 && base.k.real() > 0.0)
    return make(base, Mode::infinity_zero);
  throw CaseMismatchError(
      "the seed vanishes at neither edge; no second-order mode applies");
}

namespace {

struct Point {
  SeedJets sj;
  SecondJets s;
  double g2 = 0.0; // |r^{l+1} e^{-kr}|^2
};

Point at(const SecondOrderConfig &cfg, const KummerSolution &seed, double r) {
  static const specfun::Options opt;
  Point p;
  p.sj = seed_jets(seed, r, opt);
  p.s = second_jets(p.sj, seed.kappa, cfg.base.l, r);
  p.g2 = std::exp(2.0 * (cfg.base.l + 1) * std::log(r) - 2.0 * cfg.base.k.real() * r);
  // omega = g2 x / eps2 keeps one sign: positive when it vanishes at the
  // origin, negative when it vanishes at infinity.
  const double x = p.s.x.d[0].re.hi;
  const double eps2 = cfg.epsilon_a().imag();
  const double sign = cfg.mode == Mode::origin_zero ? 1.0 : -1.0;
  if (!(sign * x / eps2 > 0.0))
    throw SingularEtaError("omega vanishes or changes sign at r = " +
                           std::to_string(r));
  return p;
}

SampledState sample_real(const GridPtr &grid, const std::string &label,
                         int order,
                         const std::function<DJ(const Point &, double)> &pick,
                         const SecondOrderConfig &cfg) {
  const KummerSolution seed = seed_solution(cfg.base);
  return sample_plain(grid, label, order, [&](double r) {
    DJ j = pick(at(cfg, seed, r), r);
    // Real by construction.
    for (int i = 0; i < j.n; ++i)
      j.d[i].im = DD(0.0);
    return j;
  });
}

} // namespace

SampledState omega(const SecondOrderConfig &cfg, const GridPtr &grid) {
  const KummerSolution seed = seed_solution(cfg.base);
  const double eps2 = cfg.epsilon_a().imag();
  SampledState s;
  s.grid = grid;
  s.label = "omega";
  s.values.resize(grid->size());
  s.derivatives.assign(1, std::vector<cplx>(grid->size()));
  for_each_node(grid->size(), [&](std::size_t i) {
    const double r = (*grid)[i];
    const Point p = at(cfg, seed, r);
    s.values[i] = p.g2 * to_complex(p.s.x.d[0]).real() / eps2;
    s.derivatives[0][i] = p.g2 * to_complex(p.s.f2.d[0]).real();
  });
  return s;
}

SampledState eta(const SecondOrderConfig &cfg, const GridPtr &grid) {
  return sample_real(grid, "eta", 2,
                     [](const Point &p, double) { return p.s.eta; }, cfg);
}

SampledState gamma_fn(const SecondOrderConfig &cfg, const GridPtr &grid) {
  const KummerSolution seed = seed_solution(cfg.base);
  return sample_plain(grid, "gamma", 1, [&](double r) {
    return at(cfg, seed, r).s.gamma;
  });
}

SampledState real_partner_potential(const SecondOrderConfig &cfg,
                                    const GridPtr &grid) {
  return sample_real(grid, "V~", 2,
                     [](const Point &p, double) { return p.s.vtilde; }, cfg);
}

SampledState second_order_map(const SecondOrderConfig &cfg, int n,
                              const GridPtr &grid) {
  const auto qn = hydrogen::QuantumNumbers::make(n, cfg.base.l);
  const double cn = hydrogen::normalization_constant(qn, grid);
  const KummerSolution seed = seed_solution(cfg.base);
  const KummerSolution psi = KummerSolution::hydrogen(n, cfg.base.l);
  const CDD shift = -(seed.kappa * seed.kappa) + CDD(DD(1.0) / DD(double(n) * n));
  const specfun::Options opt;
  SampledState s = sample_gauged(
      grid, "psi~_" + std::to_string(n) + "," + std::to_string(cfg.base.l), 2,
      [&](double r) {
        const Point p = at(cfg, seed, r);
        Gauged g = psi.gauged(r, opt);
        g.t = g.t * cn;
        const Gauged b = apply_b_gauged(g, p.sj, seed.kappa, cfg.base.l, r);
        return Gauged{g.gauge, g.t * shift + p.s.eta * b.t};
      });
  std::size_t imax = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::abs(s.values[i]) > std::abs(s.values[imax]))
      imax = i;
  const cplx v = s.values[imax];
  if (v == 0.0)
    throw DegenerateError("second-order image vanishes on the grid");
  return s.scaled(std::conj(v) / std::abs(v));
}

ResidualReport second_order_intertwining_check(const SecondOrderConfig &cfg,
                                               int n, const GridPtr &grid_in,
                                               double tolerance, cplx scale) {
  const auto qn = hydrogen::QuantumNumbers::make(n, cfg.base.l);
  const GridPtr grid = grid_in ? grid_in : default_grid(n);
  const CDD c = CDD(scale) * CDD(hydrogen::normalization_constant(qn, grid));
  const KummerSolution seed = seed_solution(cfg.base);
  const KummerSolution psi = KummerSolution::hydrogen(n, cfg.base.l);
  const specfun::Options opt;
  const int l = cfg.base.l;
  const auto samples = sample_residual(*grid, [&](double r) {
    const Point p = at(cfg, seed, r);
    Gauged g = psi.gauged(r, opt);
    g.t = g.t * c;
    return second_order_terms(g, p.s, l, r);
  });
  return reduce_residual("H~ A~ = A~ H_l on psi_" + std::to_string(n) + "," +
                             std::to_string(l),
                         *grid, samples, tolerance);
}

} // namespace susyhydra::darboux2
