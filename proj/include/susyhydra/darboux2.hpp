#pragma once

// Second-order transform with the conjugate pair eps_a = eps, eps_b = conj(eps),
// beta_b = conj(beta_a):
//   A~ = d^2/dr^2 + eta d/dr + gamma,  H~ = -d^2/dr^2 + V~,  H~ A~ = A~ H_l,
//   eta = -Im eps / Im beta = -(ln omega)',  V~ = V_l + 2 eta'.

#include "susyhydra/darboux1.hpp"
#include "susyhydra/report.hpp"

namespace susyhydra::darboux2 {

enum class Mode {
  origin_zero,   // alpha != 0, zeta = 0: omega -> 0 as r -> 0
  infinity_zero, // alpha = 0, zeta != 0, Re k > 0: omega -> 0 as r -> inf
};

std::string to_string(Mode m);

struct SecondOrderConfig {
  darboux1::FactorizationConfig base;
  Mode mode = Mode::origin_zero;

  /// Throws CaseMismatchError when the seed does not vanish at the edge the
  /// mode needs, DegenerateError when Im eps = 0.
  static SecondOrderConfig make(const darboux1::FactorizationConfig &base,
                                Mode mode);
  /// Picks the mode the seed supports; CaseMismatchError if none does.
  static SecondOrderConfig infer(const darboux1::FactorizationConfig &base);

  cplx epsilon_a() const { return base.epsilon(); }
  cplx epsilon_b() const { return std::conj(base.epsilon()); }
};

/// omega = W(u, conj u) / (2i Im eps), with omega' = |u|^2.
SampledState omega(const SecondOrderConfig &cfg, const GridPtr &grid);

/// eta with eta' and eta''. SingularEtaError when omega vanishes or changes
/// sign at a node.
SampledState eta(const SecondOrderConfig &cfg, const GridPtr &grid);

/// gamma = beta_b' - beta_b^2 + eta beta_b.
SampledState gamma_fn(const SecondOrderConfig &cfg, const GridPtr &grid);

/// V~ = V_l + 2 eta', with V~'.
SampledState real_partner_potential(const SecondOrderConfig &cfg,
                                    const GridPtr &grid);

/// psi~ = (eps - E_n) psi_{n,l} + eta Psi with Psi = B psi_{n,l}, rotated so
/// that its largest sample is real and positive. Carries psi~' and psi~''.
SampledState second_order_map(const SecondOrderConfig &cfg, int n,
                              const GridPtr &grid);

/// (H~ A~ - A~ H_l) psi_{n,l} on interior nodes; A~ is applied in the
/// (eta, gamma) form. scale multiplies the test state.
ResidualReport second_order_intertwining_check(const SecondOrderConfig &cfg,
                                               int n,
                                               const GridPtr &grid = nullptr,
                                               double tolerance = 1e-6,
                                               cplx scale = 1.0);

} // namespace susyhydra::darboux2
