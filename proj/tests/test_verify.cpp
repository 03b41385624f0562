#include "doctest.h"

#include "susyhydra/darboux1.hpp"
#include "susyhydra/darboux2.hpp"
#include "susyhydra/errors.hpp"
#include "susyhydra/hydrogen.hpp"
#include "susyhydra/verify.hpp"
#include "test_util.hpp"

#include "json.hpp"

#include <cmath>

using namespace susyhydra;
using darboux1::FactorizationConfig;
using verify::Bump;
using verify::HydrogenEigenstate;
using verify::Integrability;

namespace {

const cplx kFig{0.1, 0.5};
FactorizationConfig fig1() { return FactorizationConfig::make(1, kFig, 1.0, 0.0); }
FactorizationConfig fig2() { return FactorizationConfig::make(1, kFig, 1.0, {0.5, 0.5}); }
FactorizationConfig fig3a() { return FactorizationConfig::make(1, {0.01, 1.0}, 1.0, 0.0); }

SampledState sampled(const GridPtr &g, auto &&fn) {
  SampledState s;
  s.grid = g;
  for (double r : g->nodes())
    s.values.push_back(fn(r));
  return s;
}

} // namespace

TEST_CASE("schrodinger residual") {
  const auto g = default_grid(3);
  const auto V = hydrogen::potential(1, g);
  const auto psi = hydrogen::bound_state({2, 1}, g);
  const auto ok = verify::schrodinger_residual(V, hydrogen::energy(2), psi, 1e-8);
  CHECK(ok.pass);
  CHECK(ok.node_first == kEdgeNodes);
  CHECK(ok.node_last == g->size() - 1 - kEdgeNodes);
  CHECK(ok.pass == (ok.relative_residual < ok.tolerance));
  const auto bad = verify::schrodinger_residual(V, -0.3, psi, 1e-8);
  CHECK_FALSE(bad.pass);
  CHECK(bad.relative_residual > 1e-2);
  // rescaling the state changes nothing
  const auto scaled = verify::schrodinger_residual(V, -0.3, psi.scaled({1e3, -2e2}), 1e-8);
  CHECK(std::abs(scaled.relative_residual - bad.relative_residual) < 1e-12);
  // without the stored second derivative the stencil takes over
  SampledState bare = psi;
  bare.derivatives.resize(1);
  CHECK(verify::schrodinger_residual(V, hydrogen::energy(2), bare, 1e-6).pass);
  const auto other = hydrogen::bound_state({2, 1}, default_grid(4));
  CHECK_THROWS_AS(verify::schrodinger_residual(V, hydrogen::energy(2), other), GridMismatchError);
}

TEST_CASE("stencil converges at fourth order") {
  auto err = [](int n) {
    const auto g = RadialGrid::geometric(0.05, 20.0, n);
    const auto f = sampled(g, [](double r) { return cplx(std::exp(-r)); });
    const auto d2 = verify::second_derivative_stencil(f);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < g->size(); ++i)
      worst = std::max(worst, std::abs(d2[i] - std::exp(-(*g)[i])) / std::exp(-(*g)[i]));
    return worst;
  };
  const double e1 = err(200), e2 = err(399), e3 = err(797);
  INFO("errors " << e1 << " " << e2 << " " << e3);
  CHECK(std::log2(e1 / e2) >= 3.5);
  CHECK(std::log2(e2 / e3) >= 3.5);
}

TEST_CASE("riccati residual") {
  CHECK(verify::riccati_residual(fig1()).pass);
  CHECK(verify::riccati_residual(fig2()).pass);
  const auto g = default_grid(5);
  auto b = darboux1::beta(fig1(), g).beta;
  CHECK(verify::riccati_residual(b, fig1().epsilon(), 1).pass);
  for (auto &v : b.values)
    v += 1e-3;
  const auto rep = verify::riccati_residual(b, fig1().epsilon(), 1);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("intertwining and factorization residuals") {
  {
    const auto rep = verify::intertwining_residual(1, fig1(), HydrogenEigenstate{3, 1});
    INFO("order 1: " << rep.relative_residual);
    CHECK(rep.pass);
  }
  {
    const auto rep = verify::intertwining_residual(2, fig3a(), HydrogenEigenstate{2, 1});
    INFO("order 2: " << rep.relative_residual);
    CHECK(rep.pass);
  }
  for (int order : {1, 2}) {
    const auto &c = order == 1 ? fig2() : fig3a();
    const auto rep = verify::intertwining_residual(order, c, Bump{});
    INFO("order " << order << " on a bump: " << rep.relative_residual);
    CHECK(rep.pass);
    const auto sc = verify::intertwining_residual(order, c, Bump{}, nullptr, 1e-6, 1e3);
    CHECK(std::abs(sc.relative_residual - rep.relative_residual) < 1e-12);
  }
  CHECK_THROWS_AS(verify::intertwining_residual(1, fig1(), HydrogenEigenstate{3, 2}), DomainError);
  CHECK_THROWS_AS(verify::intertwining_residual(3, fig1(), HydrogenEigenstate{3, 1}),
                  InvalidArgumentError);
  for (const auto &c : {fig1(), fig2()}) {
    for (int n = 2; n <= 5; ++n) {
      const auto rep = verify::factorization_residual(c, HydrogenEigenstate{n, 1});
      INFO("AB + eps on psi_" << n << ": " << rep.relative_residual);
      CHECK(rep.pass);
    }
    CHECK(verify::factorization_residual(c, Bump{3.0, 2.0}).pass);
  }
}

TEST_CASE("integrability verdicts") {
  const auto g = default_grid(3);
  {
    const auto rep = verify::integrability_report(hydrogen::bound_state({1, 0}, g));
    CHECK(rep.verdict == Integrability::normalizable);
    CHECK(rep.origin_power == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.tail_rate == doctest::Approx(1.0).epsilon(1e-3));
    REQUIRE(rep.norm_estimate);
    CHECK(*rep.norm_estimate == doctest::Approx(1.0).epsilon(1e-10));
  }
  {
    const auto rep = verify::integrability_report(darboux1::kernel_state(fig1(), g));
    CHECK(rep.verdict == Integrability::divergent_origin);
    CHECK(rep.origin_power == doctest::Approx(-2.0).epsilon(0.05));
    CHECK_FALSE(rep.norm_estimate);
  }
  {
    const auto rep = verify::integrability_report(darboux1::kernel_state(fig2(), default_grid(5)));
    CHECK(rep.verdict == Integrability::normalizable);
    CHECK(rep.tail_rate == doctest::Approx(kFig.real()).epsilon(0.05));
  }
  {
    const auto rep = verify::integrability_report(
        sampled(g, [](double r) { return cplx(r * std::exp(0.1 * r)); }));
    CHECK(rep.verdict == Integrability::divergent_tail);
    CHECK(rep.tail_rate < 0.0);
  }
  {
    // a slow power tail r^-0.2 is not square integrable
    const auto rep = verify::integrability_report(
        sampled(g, [](double r) { return cplx(r / std::pow(1.0 + r, 1.2)); }));
    CHECK(rep.verdict == Integrability::divergent_tail);
  }
  {
    // a ragged tail gives no verdict
    const auto rep = verify::integrability_report(sampled(
        g, [](double r) { return cplx(r / (1.0 + r) * (1.5 + std::sin(20.0 * r))); }));
    CHECK(rep.verdict == Integrability::undetermined);
    CHECK_FALSE(rep.note.empty());
  }
  const auto narrow = RadialGrid::geometric(1.0, 50.0, 400);
  CHECK_THROWS_AS(verify::integrability_report(hydrogen::bound_state({1, 0}, narrow)),
                  InsufficientRangeError);
  const auto js = nlohmann::json::parse(
      verify::to_json(verify::integrability_report(hydrogen::bound_state({2, 1}, g))));
  CHECK(js["verdict"] == "normalizable");
  CHECK(js.contains("tail_rate"));
}

TEST_CASE("quadrature is stable under halving the grid") {
  for (auto [n, l] : {std::pair{1, 0}, {3, 1}, {5, 2}}) {
    const double a = hydrogen::normalization_constant({n, l}, RadialGrid::geometric(1e-4, 200.0, 4000));
    const double b = hydrogen::normalization_constant({n, l}, RadialGrid::geometric(1e-4, 200.0, 2000));
    CHECK(std::abs(a - b) < 1e-6 * std::abs(a));
  }
}

TEST_CASE("monotonicity and zero scan") {
  const auto g = default_grid(4);
  const auto sc = darboux2::SecondOrderConfig::make(fig3a(), darboux2::Mode::origin_zero);
  const auto w = darboux2::omega(sc, g);
  const auto u = darboux1::seed_u(fig3a(), g);
  const auto rep = verify::monotonicity_and_zero_scan(w, u);
  CHECK(rep.monotone);
  CHECK(rep.interior_zero_count <= 1);
  REQUIRE(rep.zero_location);
  CHECK(*rep.zero_location <= 10.0 * g->r_min());
  CHECK(rep.derivative_mismatch < 1e-10);

  // negative controls
  auto wiggle = sampled(g, [](double r) { return cplx(std::sin(r)); });
  const auto bad = verify::monotonicity_and_zero_scan(wiggle, u);
  CHECK_FALSE(bad.monotone);
  CHECK(bad.interior_zero_count > 1);
  CHECK(bad.derivative_mismatch < 0.0);
  auto shifted = w;
  for (auto &v : shifted.values)
    v -= w.values[g->size() / 2];
  const auto one = verify::monotonicity_and_zero_scan(shifted, u);
  CHECK(one.monotone);
  CHECK(one.interior_zero_count == 1);
  REQUIRE(one.zero_location);
  CHECK(*one.zero_location == doctest::Approx((*g)[g->size() / 2]).epsilon(1e-2));
  const auto js = nlohmann::json::parse(verify::to_json(rep));
  CHECK(js["monotone"] == true);
}

TEST_CASE("gram matrix") {
  const auto g = default_grid(3);
  std::vector<SampledState> h;
  for (int n = 1; n <= 3; ++n)
    h.push_back(hydrogen::bound_state({n, 0}, g).scaled(double(n)));
  const auto G = verify::gram_matrix(h);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(G[i][j] - (i == j ? 1.0 : 0.0)) < 1e-6);

  std::vector<SampledState> mapped;
  for (int n = 2; n <= 4; ++n)
    mapped.push_back(darboux1::mapped_bound_state(fig1(), n, default_grid(4)));
  const auto M = verify::gram_matrix(mapped);
  double off = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(M[i][i] - 1.0) < 1e-10);
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) {
        off = std::max(off, std::abs(M[i][j]));
        CHECK(std::abs(M[i][j] - std::conj(M[j][i])) < 1e-12);
      }
  }
  CHECK(off > 1e-3);

  const auto one = verify::gram_matrix({h[1]});
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0][0] - 1.0) < 1e-12);
  CHECK_THROWS_AS(verify::gram_matrix({h[0], mapped[0]}), GridMismatchError);
}

TEST_CASE("case table") {
  const auto cfgs = verify::appendix_configs();
  CHECK(cfgs.size() == 18);
  const auto rows = verify::appendix_sweep();
  REQUIRE(rows.size() == 18);
  for (const auto &r : rows) {
    INFO("l = " << r.cfg.l << ", k = " << r.cfg.k << ", alpha = " << r.cfg.alpha << ", zeta = "
                << r.cfg.zeta << ": expected " << r.expected << ", got " << r.got);
    CHECK(r.pass);
  }
}

TEST_CASE("suites") {
  CHECK_THROWS_AS(verify::run_suite("everything", fig1()), InvalidArgumentError);
  const auto res = verify::run_suite("factorization", fig2());
  CHECK(res.pass);
  CHECK_FALSE(res.reports.empty());
  const auto js = nlohmann::json::parse(verify::to_json(res));
  CHECK(js["suite"] == "factorization");
  CHECK(js["pass"] == true);
  REQUIRE(js["reports"].is_array());
  for (const auto &r : js["reports"]) {
    CHECK(r.contains("identity"));
    CHECK(r.contains("relative_residual"));
    CHECK(r["pass"] == true);
  }
  const auto rr = nlohmann::json::parse(to_json(res.reports.front()));
  CHECK(rr.contains("tolerance"));
}
