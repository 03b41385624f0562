#include "susyhydra/hydrogen.hpp"

#include "pointwise.hpp"

#include <cmath>
#include <string>

namespace susyhydra::hydrogen {

QuantumNumbers QuantumNumbers::make(int n, int l) {
  if (l < 0)
    throw InvalidArgumentError("l must be non-negative");
  if (n < l + 1)
    throw InvalidArgumentError("n must be at least l+1 (n=" +
                               std::to_string(n) + ", l=" + std::to_string(l) +
                               ")");
  return {n, l};
}

double effective_potential(int l, double r) {
  if (!(r > 0.0))
    throw DomainError("effective potential needs r > 0");
  return double(l) * (l + 1) / (r * r) - 2.0 / r;
}

double energy(int n) {
  if (n < 1)
    throw InvalidArgumentError("n must be positive");
  return -1.0 / (double(n) * n);
}

SampledState potential(int l, const GridPtr &grid) {
  if (l < 0)
    throw InvalidArgumentError("l must be non-negative");
  return detail::sample_plain(grid, "V_" + std::to_string(l), 2, [&](double r) {
    return detail::coulomb_jet(l, r, 3);
  });
}

namespace {

SampledState raw_state(QuantumNumbers qn, const GridPtr &grid) {
  const auto sol = detail::KummerSolution::hydrogen(qn.n, qn.l);
  const specfun::Options opt;
  return detail::sample_gauged(
      grid,
      "psi_" + std::to_string(qn.n) + "," + std::to_string(qn.l), 2,
      [&](double r) { return sol.gauged(r, opt); });
}

} // namespace

double normalization_constant(QuantumNumbers qn, const GridPtr &grid) {
  qn = QuantumNumbers::make(qn.n, qn.l);
  const SampledState s = raw_state(qn, grid);
  return 1.0 / std::sqrt(inner_product(s, s).real());
}

SampledState bound_state(QuantumNumbers qn, const GridPtr &grid) {
  qn = QuantumNumbers::make(qn.n, qn.l);
  return normalize(raw_state(qn, grid));
}

} // namespace susyhydra::hydrogen
