#include "doctest.h"

#include "susyhydra/darboux1.hpp"
#include "susyhydra/darboux2.hpp"
#include "susyhydra/errors.hpp"
#include "susyhydra/hydrogen.hpp"
#include "susyhydra/verify.hpp"
#include "test_util.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace susyhydra;
using darboux1::FactorizationConfig;
using darboux1::GeneralSolutionParams;
using testutil::max_rel;
using testutil::rel;

namespace {

const cplx kFig{0.1, 0.5};

FactorizationConfig fig1() { return FactorizationConfig::make(1, kFig, 1.0, 0.0); }
FactorizationConfig fig2() { return FactorizationConfig::make(1, kFig, 1.0, {0.5, 0.5}); }

std::size_t node_at(const GridPtr &g, double r) {
  return std::lower_bound(g->nodes().begin(), g->nodes().end(), r) - g->nodes().begin();
}

// max |a_i - c b_i| / max |a| with c fitted at the middle node
double after_matching(const std::vector<cplx> &a, const std::vector<cplx> &b,
                      std::size_t from, std::size_t to) {
  const std::size_t mid = (from + to) / 2;
  const cplx c = a[mid] / b[mid];
  double num = 0.0, den = 0.0;
  for (std::size_t i = from; i < to; ++i) {
    num = std::max(num, std::abs(a[i] - c * b[i]));
    den = std::max(den, std::abs(a[i]));
  }
  return num / den;
}

} // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(FactorizationConfig::make(-1, kFig, 1.0, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(FactorizationConfig::make(1, kFig, 0.0, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(FactorizationConfig::make(1, 0.5, 1.0, 0.0), InvalidArgumentError);
  CHECK_NOTHROW(FactorizationConfig::make(1, 0.5, 1.0, 0.0, true));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(FactorizationConfig::make(1, {0.1, nan}, 1.0, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(FactorizationConfig::make(1, kFig, {nan, 0.0}, 0.0), InvalidArgumentError);
  const auto c = fig1();
  CHECK(c.epsilon() == -kFig * kFig);
  CHECK(c.c() == 4);
  CHECK_THROWS_AS(GeneralSolutionParams::make(0.0, 1.0, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(GeneralSolutionParams::make(0.3, 0.0, 0.0), InvalidArgumentError);
  CHECK(GeneralSolutionParams::make({0.3, 0.2}, 1.0, 0.0).lambda() ==
        -cplx(0.3, 0.2) * cplx(0.3, 0.2));
}

TEST_CASE("seed solves the radial equation in every case") {
  const auto g = RadialGrid::geometric(1e-3, 40.0, 2000);
  const std::vector<FactorizationConfig> cfgs = {
      fig1(), fig2(),
      FactorizationConfig::make(1, {0.3, 0.7}, 0.0, 1.0),
      FactorizationConfig::make(1, {-0.3, 0.7}, 0.0, 1.0),
      FactorizationConfig::make(0, {0.3, 0.7}, 1.0, 1.0),
      FactorizationConfig::make(2, {-0.2, 0.4}, {0.3, -1.0}, {2.0, 0.5})};
  for (const auto &c : cfgs) {
    const auto u = darboux1::seed_u(c, g);
    REQUIRE(u.derivative_order() >= 2);
    const auto rep = verify::schrodinger_residual(hydrogen::potential(c.l, g), c.epsilon(), u, 1e-8);
    INFO("l = " << c.l << ", k = " << c.k << ", residual = " << rep.relative_residual);
    CHECK(rep.pass);
    // the analytic u'' against the stencil away from the edges
    const auto d2 = verify::second_derivative_stencil(u);
    CHECK(max_rel(d2, u.derivative(2), 100, g->size() - 100) < 1e-6);
  }
}

TEST_CASE("seed behaviour at the ends") {
  const auto g = RadialGrid::geometric(1e-4, 60.0, 1500);
  // case A: u ~ r^{l+1} at the origin
  const auto uA = darboux1::seed_u(fig1(), g);
  CHECK(rel(uA.values[0], cplx(std::pow((*g)[0], 2.0))) < 1e-3);
  // case B: diverges at the origin, decays at infinity
  const auto uB = darboux1::seed_u(FactorizationConfig::make(1, {0.3, 0.7}, 0.0, 1.0), g);
  for (std::size_t i = 50; i <= 800; i += 50)
    CHECK(std::abs(uB.values[i]) < std::abs(uB.values[i - 50]));
  const auto rep = verify::integrability_report(uB);
  CHECK(rep.tail_rate > 0.25);
  CHECK(rep.origin_power == doctest::Approx(-1.0).epsilon(0.02));
}

TEST_CASE("riccati residual and beta near the origin") {
  for (const auto &c : {fig1(), fig2()}) {
    const auto rep = verify::riccati_residual(c);
    INFO("residual " << rep.relative_residual);
    CHECK(rep.pass);
    CHECK(rep.relative_residual < 1e-8);
  }
  const auto g = RadialGrid::geometric(1e-4, 40.0, 800);
  const auto b = darboux1::beta(fig1(), g);
  const double r = (*g)[0];
  CHECK(std::abs(b.beta.values[0] * r + 2.0) < 1e-3);
  // beta = -(l+1)/r + k + Omega
  for (std::size_t i = 0; i < g->size(); i += 37) {
    const double ri = (*g)[i];
    CHECK(std::abs(b.beta.values[i] - (-2.0 / ri + kFig + b.omega_cap.values[i])) <
          1e-9 * (2.0 / ri + 1.0));
  }
}

TEST_CASE("partner potential") {
  const auto g = default_grid(5);
  for (const auto &c : {fig1(), fig2()}) {
    const auto V = darboux1::partner_potential(c, g);
    const auto Vl = hydrogen::potential(1, g);
    const auto b = darboux1::beta(c, g);
    std::vector<cplx> want(g->size());
    for (std::size_t i = 0; i < g->size(); ++i)
      want[i] = Vl.values[i] + 2.0 * b.beta.derivative(1)[i];
    CHECK(max_rel(V.values, want) < 1e-11);
  }
  // Im V = 2 Im beta' dies off like r^-2, so it takes r ~ 2000 to reach 1e-6
  const auto far = RadialGrid::geometric(1e-3, 2000.0, 4000);
  const auto Vf = darboux1::partner_potential(fig1(), far);
  CHECK(std::abs(Vf.values.back().imag()) < 1e-6);
  const std::size_t mid = node_at(far, 1000.0);
  const double r1 = (*far)[mid], r2 = far->r_max();
  CHECK(rel(Vf.values[mid].imag() * r1 * r1, Vf.values.back().imag() * r2 * r2) < 0.01);
  // near the origin the real part follows V_{l+1} (fig 1) or V_{l-1} (fig 2)
  const auto small = RadialGrid::geometric(1e-5, 40.0, 800);
  const double r = (*small)[0];
  CHECK(rel(darboux1::partner_potential(fig1(), small).values[0].real(),
            hydrogen::effective_potential(2, r)) < 1e-3);
  CHECK(rel(darboux1::partner_potential(fig2(), small).values[0].real(),
            hydrogen::effective_potential(0, r)) < 1e-3);
}

TEST_CASE("apply_b") {
  const auto g = default_grid(5);
  const auto c = fig1();
  const auto u = darboux1::seed_u(c, g);
  const auto Bu = darboux1::apply_b(c, u);
  double worst = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i)
    worst = std::max(worst, std::abs(Bu.values[i]) /
                                (std::abs(u.derivative(1)[i]) + std::abs(u.values[i]) + 1e-300));
  CHECK(worst < 1e-12);

  const auto p1 = hydrogen::bound_state({2, 1}, g);
  const auto p2 = hydrogen::bound_state({4, 1}, g);
  const cplx a{0.7, -0.2}, b{-1.5, 0.4};
  SampledState mix = p1.scaled(a);
  for (std::size_t i = 0; i < g->size(); ++i) {
    mix.values[i] += b * p2.values[i];
    for (int j = 0; j < mix.derivative_order(); ++j)
      mix.derivatives[j][i] += b * p2.derivative(j + 1)[i];
  }
  const auto B1 = darboux1::apply_b(c, p1), B2 = darboux1::apply_b(c, p2);
  const auto Bm = darboux1::apply_b(c, mix);
  std::vector<cplx> sum(g->size());
  for (std::size_t i = 0; i < g->size(); ++i)
    sum[i] = a * B1.values[i] + b * B2.values[i];
  CHECK(max_rel(Bm.values, sum) < 1e-12);

  SampledState bare;
  bare.grid = g;
  bare.values = p1.values;
  CHECK_THROWS_AS(darboux1::apply_b(c, bare), InvalidArgumentError);
}

TEST_CASE("general solution") {
  const auto g = default_grid(4);
  for (auto [n, l] : {std::pair{1, 0}, {3, 1}, {4, 2}}) {
    const auto phi = normalize(
        darboux1::general_solution(GeneralSolutionParams::make(1.0 / n, 1.0, 0.0), l, g));
    const auto psi = hydrogen::bound_state({n, l}, g);
    CHECK(max_rel(phi.values, psi.values) < 1e-12);
  }
  const auto p = GeneralSolutionParams::make({0.3, 0.2}, {0.5, 0.1}, {1.0, -0.3});
  const auto phi = darboux1::general_solution(p, 1, g);
  const auto rep = verify::schrodinger_residual(hydrogen::potential(1, g), p.lambda(), phi, 1e-8);
  INFO("residual " << rep.relative_residual);
  CHECK(rep.pass);
}

TEST_CASE("mapped bound states") {
  const auto g = default_grid(5);
  for (const auto &c : {fig1(), fig2()}) {
    const auto V = darboux1::partner_potential(c, g);
    for (int n = 2; n <= 5; ++n) {
      const auto Psi = darboux1::mapped_bound_state(c, n, g);
      const auto rep = verify::schrodinger_residual(V, hydrogen::energy(n), Psi, 1e-6);
      INFO("zeta = " << c.zeta << ", n = " << n << ", residual = " << rep.relative_residual);
      CHECK(rep.pass);
      const auto viaB = darboux1::apply_b(c, hydrogen::bound_state({n, 1}, g));
      CHECK(after_matching(Psi.values, viaB.values, 0, g->size()) < 1e-8);
    }
  }
  CHECK_THROWS_AS(darboux1::mapped_bound_state(fig1(), 1, g), InvalidArgumentError);
}

TEST_CASE("mapped state follows the bound state at large r") {
  // Psi / psi -> k - 1/n - 2k with O(1/r) corrections
  const auto g = RadialGrid::geometric(1e-3, 1000.0, 4000);
  const auto Psi = darboux1::mapped_bound_state(fig1(), 3, g);
  const auto psi = hydrogen::bound_state({3, 1}, g);
  const cplx limit = -kFig - 1.0 / 3.0;
  const std::size_t to = g->size() - 1, from = node_at(g, 100.0);
  CHECK(rel(Psi.values[to] / psi.values[to], limit) < 0.01);
  const cplx d1 = (Psi.values[from] / psi.values[from] - limit) * (*g)[from];
  const cplx d2 = (Psi.values[to] / psi.values[to] - limit) * (*g)[to];
  CHECK(rel(d2, d1) < 0.15);
}

TEST_CASE("kernel state") {
  const auto g = default_grid(5);
  for (const auto &c : {fig1(), fig2()}) {
    const auto K = darboux1::kernel_state(c, g);
    const auto b = darboux1::beta(c, g);
    // A K = -K' + beta K
    std::vector<cplx> AK(g->size()), scale(g->size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      num = std::max(num, std::abs(-K.derivative(1)[i] + b.beta.values[i] * K.values[i]));
      den = std::max(den, std::abs(K.derivative(1)[i]) + std::abs(b.beta.values[i] * K.values[i]));
    }
    CHECK(num / den < 1e-8);
    const auto rep = verify::schrodinger_residual(darboux1::partner_potential(c, g), c.epsilon(),
                                                  K, 1e-6);
    INFO("residual " << rep.relative_residual);
    CHECK(rep.pass);
  }
  // case A: |Psi_eps| ~ r^{-(l+1)} at the origin
  const auto rep = verify::integrability_report(darboux1::kernel_state(fig1(), g));
  CHECK(rep.origin_power == doctest::Approx(-2.0).epsilon(0.02));
  CHECK(rep.verdict == verify::Integrability::divergent_origin);
  // fig 2: normalizable, decaying like e^{-Re k r}
  const auto rep2 = verify::integrability_report(darboux1::kernel_state(fig2(), g));
  CHECK(rep2.verdict == verify::Integrability::normalizable);
  CHECK(rep2.tail_rate == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("kernel asymptotics") {
  const auto g = RadialGrid::geometric(1e-5, 60.0, 3000);
  {
    const auto c = fig2();
    const auto lt = darboux1::leading_asymptotics(c, darboux1::Regime::kernel_origin);
    const cplx a = c.a();
    // (2k)^{2l+1} Gamma(l+1-1/k) / (zeta Gamma(2l+1))
    const cplx want = std::pow(2.0 * kFig, 3) * specfun::gamma(a) / (c.zeta * 2.0);
    CHECK(rel(lt.amplitude, want) < 1e-12);
    CHECK(lt.power == 1.0);
    const auto K = darboux1::kernel_state(c, g);
    const double r = (*g)[0];
    CHECK(rel(K.values[0], lt.amplitude * r) < 1e-3);
  }
  {
    const auto c = fig1();
    const auto lt = darboux1::leading_asymptotics(c, darboux1::Regime::kernel_origin);
    CHECK(lt.power == -2.0);
    const auto K = darboux1::kernel_state(c, g);
    const double r = (*g)[0];
    CHECK(rel(K.values[0], lt.amplitude / (r * r)) < 1e-3);
  }
  {
    // k1 > 0 with alpha = 0: the kernel grows like r^{1/k} e^{kr}
    const auto c = FactorizationConfig::make(1, {0.3, 0.7}, 0.0, 1.0);
    const auto lt = darboux1::leading_asymptotics(c, darboux1::Regime::kernel_infinity);
    CHECK(lt.rate == c.k);
    CHECK(rel(lt.power, -1.0 / c.k) < 1e-15);
    const auto gi = RadialGrid::geometric(1e-2, 150.0, 2000);
    const auto K = darboux1::kernel_state(c, gi);
    const double r = gi->r_max();
    const cplx pred = lt.amplitude * std::exp(lt.power * std::log(r) + lt.rate * r);
    CHECK(rel(K.values.back(), pred) < 0.02);
  }
  {
    // alpha != 0, k1 > 0: the M part dominates, u ~ e^{kr}, kernel ~ e^{-kr}
    const auto c = FactorizationConfig::make(1, {0.3, 0.7}, 1.0, 0.0);
    const auto lt = darboux1::leading_asymptotics(c, darboux1::Regime::kernel_infinity);
    CHECK(lt.rate == -c.k);
    const auto gi = RadialGrid::geometric(1e-2, 150.0, 2000);
    const auto K = darboux1::kernel_state(c, gi);
    const double r = gi->r_max();
    const cplx pred = lt.amplitude * std::exp(lt.power * std::log(r) + lt.rate * r);
    CHECK(rel(K.values.back(), pred) < 0.02);
  }
}

TEST_CASE("mapped general states near the origin") {
  const auto g = RadialGrid::geometric(1e-5, 40.0, 2500);
  const auto p = GeneralSolutionParams::make({0.3, 0.2}, {0.5, 0.1}, {1.0, -0.3});
  const std::vector<FactorizationConfig> cfgs = {
      fig1(), fig2(), FactorizationConfig::make(2, kFig, 1.0, {0.5, 0.5}),
      FactorizationConfig::make(0, kFig, 1.0, 0.0),
      FactorizationConfig::make(0, kFig, 1.0, {0.5, 0.5})};
  for (const auto &c : cfgs) {
    const auto lt = darboux1::leading_asymptotics(c, darboux1::Regime::mapped_origin, &p);
    const auto Psi = darboux1::mapped_general_state(c, p, g);
    const double r = (*g)[0];
    const cplx pred = lt.amplitude * std::pow(r, lt.power.real());
    INFO("l = " << c.l << ", zeta = " << c.zeta << ", got " << Psi.values[0] << ", want " << pred);
    CHECK(rel(Psi.values[0], pred) < 1e-3);
  }
  const auto p0 = GeneralSolutionParams::make({0.3, 0.2}, 1.0, 0.0);
  CHECK_THROWS_AS(darboux1::leading_asymptotics(fig1(), darboux1::Regime::mapped_origin, &p0),
                  CaseMismatchError);
  CHECK_THROWS_AS(darboux1::leading_asymptotics(fig1(), darboux1::Regime::mapped_origin),
                  CaseMismatchError);
  CHECK_THROWS_AS(darboux1::leading_asymptotics(fig1(), darboux1::Regime::mapped_infinity, &p),
                  CaseMismatchError);
}

TEST_CASE("mapped general states at large r") {
  // the leading term is approached at O(1/r)
  const auto g = RadialGrid::geometric(1e-2, 1000.0, 3000);
  const std::size_t mid = node_at(g, 100.0);
  for (cplx kap : {cplx(0.3, 0.2), cplx(-0.25, 0.4)}) {
    const auto p = GeneralSolutionParams::make(kap, 1.0, 0.0);
    const auto lt = darboux1::leading_asymptotics(fig1(), darboux1::Regime::mapped_infinity, &p);
    const auto Psi = darboux1::mapped_general_state(fig1(), p, g);
    auto err = [&](std::size_t i) {
      const double r = (*g)[i];
      return rel(Psi.values[i], lt.amplitude * std::exp(lt.power * std::log(r) + lt.rate * r));
    };
    INFO("kappa " << kap << ", errors " << err(mid) << " " << err(g->size() - 1));
    CHECK(err(g->size() - 1) < 0.02);
    CHECK(err(mid) / err(g->size() - 1) > 7.0);
  }
}

TEST_CASE("collision with the factorization energy") {
  const auto g = default_grid(3);
  const auto p = GeneralSolutionParams::make(kFig, 1.0, 0.0);
  CHECK_THROWS_AS(darboux1::mapped_general_state(fig1(), p, g), CollisionError);
}

TEST_CASE("theta") {
  for (const auto &c : {fig2(), FactorizationConfig::make(0, {-0.4, 0.6}, {0.2, 1.0}, 2.0)}) {
    for (int s : {1, -1}) {
      const cplx a = c.a();
      const cplx want = c.zeta + c.alpha * specfun::gamma(double(c.c())) /
                                     specfun::gamma(double(c.l + 1) + 1.0 / c.k) *
                                     std::exp(double(s) * cplx(0.0, std::numbers::pi) * a);
      CHECK(rel(darboux1::theta(c, s), want) < 1e-12);
    }
  }
}

TEST_CASE("classification") {
  {
    const auto rep = darboux1::classify_case(fig1());
    CHECK(rep.case_label == darboux1::CaseLabel::A);
    CHECK_FALSE(rep.kernel_normalizable);
    for (cplx e : rep.spectrum)
      CHECK(e.imag() == 0.0);
    CHECK(rep.spectrum.front() == -0.25);
  }
  {
    const auto rep = darboux1::classify_case(fig2());
    CHECK(rep.case_label == darboux1::CaseLabel::D);
    CHECK(rep.scan.verdict == darboux1::Verdict::yes);
    CHECK(std::abs(rep.theta) > 1e-6);
    CHECK(rep.kernel_normalizable);
    CHECK(std::find(rep.spectrum.begin(), rep.spectrum.end(), fig2().epsilon()) !=
          rep.spectrum.end());
    const auto js = darboux1::to_json(rep);
    for (const char *key : {"\"case\"", "\"theta_plus\"", "\"theta_minus\"", "\"selected_sign\"",
                            "\"in_c0\"", "\"kernel_normalizable\"", "\"spectrum\""})
      CHECK(js.find(key) != std::string::npos);
  }
  CHECK(darboux1::classify_case(FactorizationConfig::make(1, {0.3, 0.7}, 0.0, 1.0)).case_label ==
        darboux1::CaseLabel::B);
  CHECK(darboux1::classify_case(FactorizationConfig::make(1, {-0.3, 0.7}, 0.0, 1.0)).case_label ==
        darboux1::CaseLabel::C);
  const auto cfgs = verify::appendix_configs();
  for (std::size_t i = cfgs.size() - 2; i < cfgs.size(); ++i) {
    const auto rep = darboux1::classify_case(cfgs[i]);
    CHECK(rep.case_label == darboux1::CaseLabel::E);
    CHECK(std::abs(rep.theta) < 1e-10);
  }
}

TEST_CASE("beta from omega") {
  // beta1 = -(1/2)(ln omega')', beta2 = eps2 / (ln omega)'
  const auto c = fig1();
  const auto sc = darboux2::SecondOrderConfig::make(c, darboux2::Mode::origin_zero);
  const auto g = default_grid(5);
  const auto w = darboux2::omega(sc, g);
  REQUIRE(w.derivative_order() >= 1);
  const auto u = darboux1::seed_u(c, g);
  const auto b = darboux1::beta(c, g);
  const double eps2 = c.epsilon().imag();
  std::vector<cplx> b1(g->size()), b2(g->size()), g1(g->size()), g2(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) {
    b1[i] = b.beta.values[i].real();
    b2[i] = b.beta.values[i].imag();
    // omega'' = (|u|^2)'
    const double w2 = 2.0 * (std::conj(u.values[i]) * u.derivative(1)[i]).real();
    g1[i] = -0.5 * w2 / w.derivative(1)[i].real();
    g2[i] = eps2 * w.values[i].real() / w.derivative(1)[i].real();
  }
  CHECK(max_rel(g1, b1) < 1e-8);
  CHECK(max_rel(g2, b2) < 1e-8);
}

TEST_CASE("rescaling alpha and zeta leaves beta alone") {
  const auto g = default_grid(4);
  const cplx s{-2.5, 1.25};
  for (const auto &c : {fig1(), fig2()}) {
    const auto scaled = FactorizationConfig::make(c.l, c.k, s * c.alpha, s * c.zeta);
    CHECK(max_rel(darboux1::beta(scaled, g).beta.values, darboux1::beta(c, g).beta.values) <
          1e-12);
  }
}

TEST_CASE("conjugate energy is not in the spectrum") {
  // 1/conj(u) against conj(eps)
  const auto c = fig2();
  const auto g = default_grid(5);
  const auto K = darboux1::kernel_state(c, g);
  SampledState probe;
  probe.grid = g;
  for (std::size_t i = 0; i < g->size(); ++i)
    probe.values.push_back(std::conj(K.values[i]));
  for (int j = 1; j <= K.derivative_order(); ++j) {
    probe.derivatives.emplace_back();
    for (cplx v : K.derivative(j))
      probe.derivatives.back().push_back(std::conj(v));
  }
  const auto rep = verify::schrodinger_residual(darboux1::partner_potential(c, g),
                                                std::conj(c.epsilon()), probe, 1e-2);
  CHECK(rep.relative_residual > 1e-2);
}

TEST_CASE("zeros of the seed are rejected") {
  // real k between levels: M(a, 2, 2kr) with a = -1.5 has two positive zeros
  const auto c = FactorizationConfig::make(0, 0.4, 1.0, 0.0, true);
  const auto g = RadialGrid::geometric(1e-3, 40.0, 800);
  CHECK_THROWS_AS(darboux1::beta(c, g), SingularBetaError);
  CHECK_THROWS_AS(darboux1::kernel_state(c, g), SingularBetaError);
}
