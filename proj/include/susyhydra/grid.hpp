#pragma once

// Radial grids, sampled states, quadrature and CSV export.

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace susyhydra {

using cplx = std::complex<double>;

class RadialGrid {
public:
  /// Geometric nodes r_i = r_min (r_max/r_min)^(i/(N-1)).
  static std::shared_ptr<const RadialGrid> geometric(double r_min,
                                                     double r_max, int count);
  /// Nodes read back from a file; must be strictly increasing, positive and
  /// geometric to 1e-9 relative.
  static std::shared_ptr<const RadialGrid>
  from_nodes(std::vector<double> nodes);

  const std::vector<double> &nodes() const { return r_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }
  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  /// Spacing in t = ln r.
  double dt() const { return dt_; }

  bool same_as(const RadialGrid &other) const;

private:
  std::vector<double> r_;
  double dt_ = 0.0;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Node count used when the caller does not pick one; SUSYHYDRA_GRID_N
/// overrides the built-in 4000.
int default_grid_count();
GridPtr default_grid(int n_max);

struct SampledState {
  GridPtr grid;
  std::vector<cplx> values;
  // derivatives[j] holds the (j+1)-th derivative, when known analytically.
  std::vector<std::vector<cplx>> derivatives;
  std::string label;

  std::size_t size() const { return values.size(); }
  int derivative_order() const { return int(derivatives.size()); }
  const std::vector<cplx> &derivative(int order) const;

  SampledState scaled(cplx factor) const;
};

void require_same_grid(const SampledState &a, const SampledState &b);

/// Integral of F over the grid span plus analytic head and tail pieces:
/// composite Simpson in t = ln r, head F(r0) r0/(p+1) with the local power
/// p, tail F(R)/mu with mu = -F'/F at R. Throws TailDivergenceError when the
/// tail is not negligible and does not decay.
cplx integrate(const RadialGrid &grid, const std::vector<cplx> &f,
               const std::vector<cplx> *df = nullptr);

/// 4 pi * integral of conj(f) g.
cplx inner_product(const SampledState &f, const SampledState &g);

/// Rescales to unit norm under inner_product.
SampledState normalize(const SampledState &f);

/// CSV with columns r, re, im, dre, dim (dre/dim empty when no derivative).
void write_csv(std::ostream &os, const SampledState &s);
SampledState read_csv(std::istream &is, const std::string &label = "");

/// Complex literal "a+bi", "a-bi", "bi" or "a" without spaces; a bare "i"
/// stands for 1i. ParseError otherwise.
cplx parse_complex(const std::string &text);

} // namespace susyhydra
