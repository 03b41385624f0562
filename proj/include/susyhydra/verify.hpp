#pragma once

// Residual norms for the operator identities, integrability verdicts,
// Wronskian monotonicity scans, Gram matrices and the named suites.

#include "susyhydra/darboux1.hpp"
#include "susyhydra/darboux2.hpp"
#include "susyhydra/report.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace susyhydra::verify {

/// d^2 f / dr^2 from fourth-order central stencils in t = ln r. The two
/// nodes at each edge are left at zero.
std::vector<cplx> second_derivative_stencil(const SampledState &f);

/// -psi'' + V psi - E psi. Uses the stored second derivative when psi
/// carries one, the stencil otherwise.
ResidualReport schrodinger_residual(const SampledState &V, cplx E,
                                    const SampledState &psi,
                                    double tolerance = 1e-8,
                                    const std::string &identity = "");

/// -beta' + beta^2 + eps - V_l. A null grid means default_grid(5).
ResidualReport riccati_residual(const darboux1::FactorizationConfig &cfg,
                                const GridPtr &grid = nullptr,
                                double tolerance = 1e-8);

/// Same identity for a supplied beta (with beta').
ResidualReport riccati_residual(const SampledState &beta, cplx eps, int l,
                                double tolerance = 1e-8);

struct HydrogenEigenstate {
  int n = 1;
  int l = 0;
};

/// exp(-1/(1-x^2)), x = (r - center)/width, zero for |x| >= 1.
struct Bump {
  double center = 2.0;
  double width = 1.5;
};

using TestState = std::variant<HydrogenEigenstate, Bump>;

/// order 1: (H(zeta) B - B H_l) f. order 2: (H~ A~ - A~ H_l) f with the
/// mode inferred from cfg. DomainError when a hydrogen test state has a
/// different l. A null grid picks default_grid from the test state.
ResidualReport intertwining_residual(int order,
                                     const darboux1::FactorizationConfig &cfg,
                                     const TestState &test,
                                     const GridPtr &grid = nullptr,
                                     double tolerance = 1e-6,
                                     cplx scale = 1.0);

/// (A B + eps) f - H_l f
ResidualReport factorization_residual(const darboux1::FactorizationConfig &cfg,
                                      const TestState &test,
                                      const GridPtr &grid = nullptr,
                                      double tolerance = 1e-7,
                                      cplx scale = 1.0);

/// a2 a1 f - A~ f with a1 = B, a2 = d/dr + eta - beta.
ResidualReport second_order_factor_residual(const darboux2::SecondOrderConfig &cfg,
                                            const TestState &test,
                                            const GridPtr &grid = nullptr,
                                            double tolerance = 1e-7);

/// (-H_l + eps + eta B) f - A~ f
ResidualReport afactor_residual(const darboux2::SecondOrderConfig &cfg,
                                const TestState &test,
                                const GridPtr &grid = nullptr,
                                double tolerance = 1e-7);

enum class Integrability { normalizable, divergent_origin, divergent_tail, undetermined };
std::string to_string(Integrability v);

struct IntegrabilityReport {
  std::optional<double> norm_estimate; // sqrt(<f, f>); empty when divergent
  double origin_power = 0.0;           // |f| ~ r^p over the first decade
  double tail_power = 0.0;             // |f| ~ r^q e^{-mu r} over the outer half
  double tail_rate = 0.0;              // mu; positive means decay
  double origin_r2 = 0.0;
  double tail_r2 = 0.0;
  double origin_rms = 0.0; // fit residuals in ln|f|
  double tail_rms = 0.0;
  Integrability verdict = Integrability::undetermined;
  std::string note;
};

/// Fits need R^2 > 0.999 or an rms residual in ln|f| below 1e-2; otherwise
/// the verdict is undetermined.
IntegrabilityReport integrability_report(const SampledState &f);

struct MonotonicityReport {
  bool monotone = false;
  int interior_zero_count = 0;
  std::optional<double> zero_location;
  // max |omega' - |u|^2| / (|u|^2 + floor); negative when omega carries no
  // derivative.
  double derivative_mismatch = -1.0;
};

MonotonicityReport monotonicity_and_zero_scan(const SampledState &omega,
                                              const SampledState &u);

/// Pairwise inner products of the unit-normalized states.
std::vector<std::vector<cplx>> gram_matrix(const std::vector<SampledState> &states);

std::string to_json(const IntegrabilityReport &rep);
std::string to_json(const MonotonicityReport &rep);

/// One row of the case-table sweep.
struct SweepRow {
  darboux1::FactorizationConfig cfg;
  std::string expected;
  std::string got;
  bool tuned = false;     // theta = 0 by construction
  bool tail_check = true; // tuned rows: seed decays at infinity like case B
  bool pass = false;
};

/// The 18-config table: alpha in {0, 1}, zeta in {0, 1, 0.5+0.5i}, both
/// signs of Re k, at l = 1 and (a subset) l = 0, plus two theta = 0 configs.
std::vector<darboux1::FactorizationConfig> appendix_configs();
std::vector<SweepRow> appendix_sweep();

struct SuiteResult {
  std::string suite;
  std::vector<ResidualReport> reports;
  std::vector<SweepRow> sweep;
  bool pass = true;
};

/// suite is one of all, factorization, intertwining, spectra, appendix.
/// InvalidArgumentError for other names.
SuiteResult run_suite(const std::string &suite,
                      const darboux1::FactorizationConfig &cfg,
                      const GridPtr &grid = nullptr);

std::string to_json(const SuiteResult &res);

} // namespace susyhydra::verify
