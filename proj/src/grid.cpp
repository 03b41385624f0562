#include "susyhydra/grid.hpp"

#include "susyhydra/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace susyhydra {

GridPtr RadialGrid::geometric(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw InvalidArgumentError("grid needs 0 < r_min < r_max");
  if (count < 8)
    throw InvalidArgumentError("grid needs at least 8 nodes");
  auto g = std::make_shared<RadialGrid>();
  g->r_.resize(count);
  const double lmin = std::log(r_min), lmax = std::log(r_max);
  g->dt_ = (lmax - lmin) / double(count - 1);
  for (int i = 0; i < count; ++i)
    g->r_[i] = std::exp(lmin + g->dt_ * i);
  g->r_.front() = r_min;
  g->r_.back() = r_max;
  return g;
}

GridPtr RadialGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 8)
    throw InvalidArgumentError("grid needs at least 8 nodes");
  if (!(nodes.front() > 0.0))
    throw InvalidArgumentError("grid nodes must be positive");
  const double dt = std::log(nodes.back() / nodes.front()) /
                    double(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1]))
      throw InvalidArgumentError("grid nodes must be strictly increasing");
    if (std::abs(std::log(nodes[i] / nodes[i - 1]) - dt) > 1e-9 * (1.0 + dt))
      throw InvalidArgumentError("grid nodes are not geometric");
  }
  auto g = std::make_shared<RadialGrid>();
  g->r_ = std::move(nodes);
  g->dt_ = dt;
  return g;
}

bool RadialGrid::same_as(const RadialGrid &other) const {
  return this == &other || r_ == other.r_;
}

int default_grid_count() {
  if (const char *env = std::getenv("SUSYHYDRA_GRID_N")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 8 && v <= 10000000)
      return int(v);
    throw InvalidArgumentError("SUSYHYDRA_GRID_N must be an integer >= 8");
  }
  return 4000;
}

GridPtr default_grid(int n_max) {
  return RadialGrid::geometric(1e-4, 40.0 * std::max(n_max, 1),
                               default_grid_count());
}

const std::vector<cplx> &SampledState::derivative(int order) const {
  if (order < 1 || order > derivative_order())
    throw InvalidArgumentError("state '" + label + "' has no derivative of order " +
                               std::to_string(order));
  return derivatives[order - 1];
}

SampledState SampledState::scaled(cplx factor) const {
  SampledState out = *this;
  for (auto &v : out.values)
    v *= factor;
  for (auto &d : out.derivatives)
    for (auto &v : d)
      v *= factor;
  return out;
}

void require_same_grid(const SampledState &a, const SampledState &b) {
  if (!a.grid || !b.grid || !a.grid->same_as(*b.grid) ||
      a.values.size() != a.grid->size() || b.values.size() != b.grid->size())
    throw GridMismatchError("states '" + a.label + "' and '" + b.label +
                            "' are not sampled on the same grid");
}

cplx integrate(const RadialGrid &grid, const std::vector<cplx> &f,
               const std::vector<cplx> *df) {
  const std::size_t n = grid.size();
  if (f.size() != n)
    throw GridMismatchError("integrand length does not match grid");
  const double h = grid.dt();
  std::vector<cplx> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = f[i] * grid[i];

  cplx body = 0.0;
  std::size_t m = n - 1; // intervals
  std::size_t simpson_end = (m % 2 == 0) ? m : m - 3;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
    body += h / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
  if (simpson_end != m) {
    const std::size_t i = simpson_end;
    body += 3.0 * h / 8.0 * (g[i] + 3.0 * g[i + 1] + 3.0 * g[i + 2] + g[i + 3]);
  }

  // Head: F ~ F0 (r/r0)^p on (0, r0).
  cplx head = 0.0;
  if (std::abs(f[0]) > 0.0 && std::abs(f[1]) > 0.0) {
    const double p = std::log(std::abs(f[1]) / std::abs(f[0])) / h;
    if (p <= -1.0)
      throw TailDivergenceError("integrand is not integrable at the origin");
    head = f[0] * grid[0] / (p + 1.0);
  }

  // Tail: F ~ F_N exp(-mu (r - R)).
  cplx tail = 0.0;
  const cplx fN = f[n - 1];
  if (std::abs(fN) > 0.0) {
    cplx mu;
    if (df)
      mu = -(*df)[n - 1] / fN;
    else
      mu = -std::log(fN / f[n - 2]) / (grid[n - 1] - grid[n - 2]);
    const double negligible = 1e-13 * std::abs(body + head);
    if (mu.real() > 0.0) {
      tail = fN / mu;
    } else if (std::abs(fN) * grid.r_max() > negligible) {
      throw TailDivergenceError("integrand does not decay at r_max = " +
                                std::to_string(grid.r_max()));
    }
  }
  return head + body + tail;
}

cplx inner_product(const SampledState &f, const SampledState &g) {
  require_same_grid(f, g);
  const std::size_t n = f.size();
  std::vector<cplx> prod(n);
  for (std::size_t i = 0; i < n; ++i)
    prod[i] = std::conj(f.values[i]) * g.values[i];
  std::vector<cplx> dprod;
  const std::vector<cplx> *dp = nullptr;
  if (f.derivative_order() >= 1 && g.derivative_order() >= 1) {
    dprod.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      dprod[i] = std::conj(f.derivatives[0][i]) * g.values[i] +
                 std::conj(f.values[i]) * g.derivatives[0][i];
    dp = &dprod;
  }
  constexpr double four_pi = 12.566370614359172954;
  return four_pi * integrate(*f.grid, prod, dp);
}

SampledState normalize(const SampledState &f) {
  const double nn = inner_product(f, f).real();
  if (!(nn > 0.0) || !std::isfinite(nn))
    throw DomainError("state '" + f.label + "' has no finite positive norm");
  return f.scaled(1.0 / std::sqrt(nn));
}

void write_csv(std::ostream &os, const SampledState &s) {
  os << "r,re,im,dre,dim\n";
  char buf[160];
  const bool has_d = s.derivative_order() >= 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (has_d)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    (*s.grid)[i], s.values[i].real(), s.values[i].imag(),
                    s.derivatives[0][i].real(), s.derivatives[0][i].imag());
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,,\n", (*s.grid)[i],
                    s.values[i].real(), s.values[i].imag());
    os << buf;
  }
}

SampledState read_csv(std::istream &is, const std::string &label) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("r,re,im", 0) != 0)
    throw ParseError("state CSV must start with header r,re,im,dre,dim");
  std::vector<double> r;
  std::vector<cplx> v, dv;
  bool has_d = true;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cols.push_back(cell);
    while (cols.size() < 5)
      cols.emplace_back();
    auto num = [&](const std::string &c) {
      char *end = nullptr;
      const double x = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0')
        throw ParseError("bad number '" + c + "' on line " +
                         std::to_string(lineno));
      return x;
    };
    r.push_back(num(cols[0]));
    v.emplace_back(num(cols[1]), num(cols[2]));
    if (cols[3].empty() || cols[4].empty())
      has_d = false;
    else
      dv.emplace_back(num(cols[3]), num(cols[4]));
  }
  SampledState s;
  s.grid = RadialGrid::from_nodes(std::move(r));
  s.values = std::move(v);
  if (has_d && dv.size() == s.values.size())
    s.derivatives.push_back(std::move(dv));
  s.label = label;
  return s;
}

namespace {

double parse_real(const std::string &full, const std::string &t, bool imag) {
  if (imag && (t.empty() || t == "+" || t == "-"))
    return t == "-" ? -1.0 : 1.0;
  // from_chars rejects a leading '+'
  const std::size_t skip = (!t.empty() && t[0] == '+') ? 1 : 0;
  double v = 0.0;
  const char *b = t.data() + skip, *e = t.data() + t.size();
  const auto res = std::from_chars(b, e, v);
  if (b == e || res.ec != std::errc() || res.ptr != e || !std::isfinite(v))
    throw ParseError("bad complex literal '" + full + "'");
  return v;
}

} // namespace

cplx parse_complex(const std::string &text) {
  if (text.empty())
    throw ParseError("empty complex literal");
  if (text.back() != 'i')
    return {parse_real(text, text, false), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      cut = i;
      break;
    }
  if (cut == std::string::npos)
    return {0.0, parse_real(text, body, true)};
  return {parse_real(text, body.substr(0, cut), false),
          parse_real(text, body.substr(cut), true)};
}

} // namespace susyhydra
