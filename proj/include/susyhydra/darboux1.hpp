#pragma once

// First-order complex factorization H_l = A B + eps, eps = -k^2, with
// A = -d/dr + beta, B = d/dr + beta, beta = -u'/u and the seed
// u = r^{l+1} e^{-kr} [alpha M(a, 2l+2, 2kr) + zeta U(a, 2l+2, 2kr)],
// a = l + 1 - 1/k. The partner is H(zeta) = B A + eps.

#include "susyhydra/grid.hpp"
#include "susyhydra/specfun.hpp"

#include <optional>
#include <string>
#include <vector>

namespace susyhydra::darboux1 {

struct FactorizationConfig {
  int l = 0;
  cplx k;
  cplx alpha{1.0, 0.0};
  cplx zeta{0.0, 0.0};
  bool allow_real_eps = false;

  /// Validates l >= 0, (alpha, zeta) != (0, 0), Im k != 0 unless
  /// allow_real_eps, and finiteness.
  static FactorizationConfig make(int l, cplx k, cplx alpha, cplx zeta,
                                  bool allow_real_eps = false);

  cplx epsilon() const { return -k * k; }
  cplx a() const { return double(l + 1) - 1.0 / k; }
  int c() const { return 2 * l + 2; }
};

struct GeneralSolutionParams {
  cplx kappa;
  cplx C{1.0, 0.0};
  cplx D{0.0, 0.0};

  static GeneralSolutionParams make(cplx kappa, cplx C, cplx D);
  cplx lambda() const { return -kappa * kappa; }
};

/// u with u' and u''.
SampledState seed_u(const FactorizationConfig &cfg, const GridPtr &grid);

/// f = alpha M + zeta U and its r-derivatives at one point.
std::vector<cplx> seed_f(const FactorizationConfig &cfg, cplx r, int order);

struct BetaResult {
  SampledState beta;      // with beta', beta''
  SampledState omega_cap; // Omega = -f'/f, with Omega'
};

/// Throws SingularBetaError when u vanishes inside the grid span.
BetaResult beta(const FactorizationConfig &cfg, const GridPtr &grid);

/// V(r; zeta) = V_l + 2 beta' = V_{l+1} + 2 Omega'.
SampledState partner_potential(const FactorizationConfig &cfg,
                               const GridPtr &grid);

/// B phi = phi' + beta phi, evaluated as W(u, phi)/u in double precision.
/// phi must carry at least its first derivative; the result carries one
/// derivative fewer.
SampledState apply_b(const FactorizationConfig &cfg, const SampledState &phi);

/// phi = r^{l+1} e^{-kappa r} [C M(l+1-1/kappa, 2l+2, 2 kappa r) + D U(...)]
SampledState general_solution(const GeneralSolutionParams &params, int l,
                              const GridPtr &grid);

/// Psi = [k - 1/n + (ln M_n)' - (ln f)'] psi_{n,l} = B psi_{n,l}, with
/// psi_{n,l} unit-normalized. Carries Psi' and Psi''.
SampledState mapped_bound_state(const FactorizationConfig &cfg, int n,
                                const GridPtr &grid);

/// B phi for a general solution phi; kappa = k is rejected with
/// CollisionError (use kernel_state).
SampledState mapped_general_state(const FactorizationConfig &cfg,
                                  const GeneralSolutionParams &params,
                                  const GridPtr &grid);

/// Psi_eps = 1/u with derivatives.
SampledState kernel_state(const FactorizationConfig &cfg, const GridPtr &grid);

enum class CaseLabel { A, B, C, D, E, singular, unclassified };
enum class Verdict { yes, no, undetermined };

std::string to_string(CaseLabel c);
std::string to_string(Verdict v);

struct ScanOptions {
  double r_min = 1e-4;
  double r_max = 0.0; // 0: max(160, 60/|k|)
  int nodes = 40000;  // 10x the default grid density
};

struct C0Scan {
  Verdict verdict = Verdict::undetermined;
  int candidates = 0;
  double min_ratio = 1.0; // min over the scan of |f| / (|alpha M| + |zeta U|)
  std::optional<double> zero_radius;
  double resolution = 0.0; // distance below which a complex zero counts as
                           // lying on the positive axis
  double r_min = 0.0, r_max = 0.0;
};

/// Scans f for zeros on (0, inf). Only meaningful when alpha, zeta != 0 but
/// runs for any config.
C0Scan scan_c0(const FactorizationConfig &cfg, const ScanOptions &opt = {});

struct ClassificationReport {
  CaseLabel case_label = CaseLabel::A;
  cplx theta_plus;
  cplx theta_minus;
  int selected_sign = 1;
  cplx theta;
  C0Scan scan;
  bool kernel_normalizable = false;
  // The first few hydrogen levels -1/n^2 (n >= l+1) and eps when the kernel
  // state is normalizable.
  std::vector<cplx> spectrum;
  int hydrogen_levels_listed = 0;
};

/// Throws UndeterminedError when the zero scan cannot decide membership in
/// C0 for a config that needs it.
ClassificationReport classify_case(const FactorizationConfig &cfg,
                                   const ScanOptions &opt = {});

/// theta_l(k) = zeta + alpha Gamma(2l+2)/Gamma(l+1+1/k) e^{sign i pi a}
cplx theta(const FactorizationConfig &cfg, int sign);

std::string to_json(const ClassificationReport &rep);

enum class Regime { mapped_origin, mapped_infinity, kernel_origin, kernel_infinity };

/// amplitude * r^power * exp(rate * r)
struct LeadingTerm {
  cplx amplitude;
  cplx power;
  cplx rate;
};

/// Closed-form leading terms. The mapped regimes need the general-solution
/// params (origin: D != 0; infinity: D = 0, kappa != k). Throws
/// CaseMismatchError when the config has no branch for the regime.
LeadingTerm leading_asymptotics(const FactorizationConfig &cfg, Regime which,
                                const GeneralSolutionParams *params = nullptr);

using susyhydra::normalize;

} // namespace susyhydra::darboux1
