#pragma once

// Radial hydrogen in units where H_l = -d^2/dr^2 + l(l+1)/r^2 - 2/r and
// E_n = -1/n^2.

#include "susyhydra/grid.hpp"

namespace susyhydra::hydrogen {

struct QuantumNumbers {
  int n = 1;
  int l = 0;

  /// Validates n >= l+1, l >= 0.
  static QuantumNumbers make(int n, int l);
  int s() const { return n - l - 1; }
};

double effective_potential(int l, double r);
double energy(int n);

/// V_l sampled on the grid, with its first two derivatives.
SampledState potential(int l, const GridPtr &grid);

/// Unit-normalized psi_{n,l} with first and second derivatives.
SampledState bound_state(QuantumNumbers qn, const GridPtr &grid);

/// The positive constant C with <C psi0, C psi0> = 1, where
/// psi0 = r^{l+1} e^{-r/n} M(l+1-n, 2l+2, 2r/n).
double normalization_constant(QuantumNumbers qn, const GridPtr &grid);

using susyhydra::inner_product;

} // namespace susyhydra::hydrogen
