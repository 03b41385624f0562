#include "susyhydra/susyhydra.h"

#include "susyhydra/darboux1.hpp"
#include "susyhydra/darboux2.hpp"
#include "susyhydra/errors.hpp"
#include "susyhydra/hydrogen.hpp"
#include "susyhydra/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>

using namespace susyhydra;

struct shy_config {
  darboux1::FactorizationConfig cfg;
};
struct shy_grid {
  GridPtr grid;
};
struct shy_state {
  SampledState state;
};

namespace {

thread_local std::string g_last_error;

cplx to_cplx(shy_complex z) { return {z.re, z.im}; }
shy_complex from_cplx(cplx z) { return {z.real(), z.imag()}; }

template <class F> shy_status guard(F &&f) {
  try {
    g_last_error.clear();
    f();
    return SHY_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return shy_status(int(e.code()));
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
  } catch (const std::exception &e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return SHY_ERR_INTERNAL;
}

void need(const void *p, const char *what) {
  if (!p)
    throw InvalidArgumentError(std::string(what) + " is null");
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

shy_status emit(shy_state **out, const std::function<SampledState()> &make) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new shy_state{make()};
  });
}

darboux2::SecondOrderConfig second(const shy_config *cfg, int mode) {
  need(cfg, "config");
  switch (mode) {
  case SHY_MODE_INFER:
    return darboux2::SecondOrderConfig::infer(cfg->cfg);
  case SHY_MODE_ORIGIN_ZERO:
    return darboux2::SecondOrderConfig::make(cfg->cfg, darboux2::Mode::origin_zero);
  case SHY_MODE_INFINITY_ZERO:
    return darboux2::SecondOrderConfig::make(cfg->cfg, darboux2::Mode::infinity_zero);
  default:
    throw InvalidArgumentError("unknown second-order mode " + std::to_string(mode));
  }
}

const GridPtr &grid_of(const shy_grid *g) {
  need(g, "grid");
  return g->grid;
}

} // namespace

extern "C" {

const char *shy_version(void) { return "1.0.0"; }

const char *shy_last_error(void) { return g_last_error.c_str(); }

const char *shy_status_name(shy_status s) {
  switch (s) {
  case SHY_OK: return "ok";
  case SHY_ERR_INVALID_ARGUMENT: return "invalid_argument";
  case SHY_ERR_POLE: return "pole";
  case SHY_ERR_DOMAIN: return "domain";
  case SHY_ERR_CONVERGENCE: return "convergence";
  case SHY_ERR_GRID_MISMATCH: return "grid_mismatch";
  case SHY_ERR_TAIL_DIVERGENCE: return "tail_divergence";
  case SHY_ERR_SINGULAR_BETA: return "singular_beta";
  case SHY_ERR_UNDETERMINED: return "undetermined";
  case SHY_ERR_CASE_MISMATCH: return "case_mismatch";
  case SHY_ERR_DEGENERATE: return "degenerate";
  case SHY_ERR_SINGULAR_ETA: return "singular_eta";
  case SHY_ERR_INSUFFICIENT_RANGE: return "insufficient_range";
  case SHY_ERR_COLLISION: return "collision";
  case SHY_ERR_PARSE: return "parse";
  case SHY_ERR_IO: return "io";
  case SHY_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void shy_string_free(char *s) { std::free(s); }

shy_status shy_parse_complex(const char *text, shy_complex *out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = from_cplx(parse_complex(text));
  });
}

shy_status shy_config_create(int l, shy_complex k, shy_complex alpha,
                             shy_complex zeta, int allow_real_eps,
                             shy_config **out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new shy_config{darboux1::FactorizationConfig::make(
        l, to_cplx(k), to_cplx(alpha), to_cplx(zeta), allow_real_eps != 0)};
  });
}

void shy_config_free(shy_config *cfg) { delete cfg; }

shy_complex shy_config_epsilon(const shy_config *cfg) {
  return cfg ? from_cplx(cfg->cfg.epsilon()) : shy_complex{0.0, 0.0};
}

shy_status shy_grid_create(double r_min, double r_max, int count, shy_grid **out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new shy_grid{RadialGrid::geometric(
        r_min, r_max, count > 0 ? count : default_grid_count())};
  });
}

shy_status shy_grid_default(int n_max, shy_grid **out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new shy_grid{default_grid(n_max)};
  });
}

void shy_grid_free(shy_grid *grid) { delete grid; }

size_t shy_grid_size(const shy_grid *grid) { return grid ? grid->grid->size() : 0; }

void shy_state_free(shy_state *s) { delete s; }

size_t shy_state_size(const shy_state *s) { return s ? s->state.size() : 0; }

shy_status shy_state_samples(const shy_state *s, double *r, shy_complex *values,
                             size_t cap) {
  return guard([&] {
    need(s, "state");
    const std::size_t n = std::min(cap, s->state.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (r)
        r[i] = (*s->state.grid)[i];
      if (values)
        values[i] = from_cplx(s->state.values[i]);
    }
  });
}

int shy_state_derivative_order(const shy_state *s) {
  return s ? s->state.derivative_order() : 0;
}

shy_status shy_state_derivative(const shy_state *s, int order, shy_complex *values,
                                size_t cap) {
  return guard([&] {
    need(s, "state");
    need(values, "values");
    const auto &d = s->state.derivative(order);
    const std::size_t n = std::min(cap, d.size());
    for (std::size_t i = 0; i < n; ++i)
      values[i] = from_cplx(d[i]);
  });
}

shy_status shy_state_integrability_json(const shy_state *s, char **json) {
  return guard([&] {
    need(s, "state");
    need(json, "json");
    *json = dup_string(verify::to_json(verify::integrability_report(s->state)));
  });
}

shy_status shy_hydrogen_potential(int l, const shy_grid *grid, shy_state **out) {
  return emit(out, [&] {
    if (l < 0)
      throw InvalidArgumentError("l must be >= 0");
    return hydrogen::potential(l, grid_of(grid));
  });
}

shy_status shy_bound_state(int n, int l, const shy_grid *grid, shy_state **out) {
  return emit(out, [&] {
    return hydrogen::bound_state(hydrogen::QuantumNumbers::make(n, l), grid_of(grid));
  });
}

shy_status shy_seed(const shy_config *cfg, const shy_grid *grid, shy_state **out) {
  return emit(out, [&] {
    need(cfg, "config");
    return darboux1::seed_u(cfg->cfg, grid_of(grid));
  });
}

shy_status shy_partner_potential(const shy_config *cfg, const shy_grid *grid,
                                 shy_state **out) {
  return emit(out, [&] {
    need(cfg, "config");
    return darboux1::partner_potential(cfg->cfg, grid_of(grid));
  });
}

shy_status shy_mapped_state(const shy_config *cfg, int n, const shy_grid *grid,
                            shy_state **out) {
  return emit(out, [&] {
    need(cfg, "config");
    return darboux1::mapped_bound_state(cfg->cfg, n, grid_of(grid));
  });
}

shy_status shy_mapped_general_state(const shy_config *cfg, shy_complex kappa,
                                    shy_complex C, shy_complex D,
                                    const shy_grid *grid, shy_state **out) {
  return emit(out, [&] {
    need(cfg, "config");
    const auto p = darboux1::GeneralSolutionParams::make(to_cplx(kappa), to_cplx(C),
                                                         to_cplx(D));
    return darboux1::mapped_general_state(cfg->cfg, p, grid_of(grid));
  });
}

shy_status shy_kernel_state(const shy_config *cfg, const shy_grid *grid,
                            shy_state **out) {
  return emit(out, [&] {
    need(cfg, "config");
    return darboux1::kernel_state(cfg->cfg, grid_of(grid));
  });
}

shy_status shy_second_mode(const shy_config *cfg, int mode, int *resolved) {
  return guard([&] {
    need(resolved, "resolved");
    *resolved = second(cfg, mode).mode == darboux2::Mode::origin_zero
                    ? SHY_MODE_ORIGIN_ZERO
                    : SHY_MODE_INFINITY_ZERO;
  });
}

shy_status shy_second_potential(const shy_config *cfg, int mode,
                                const shy_grid *grid, shy_state **out) {
  return emit(out, [&] {
    return darboux2::real_partner_potential(second(cfg, mode), grid_of(grid));
  });
}

shy_status shy_second_omega(const shy_config *cfg, int mode, const shy_grid *grid,
                            shy_state **out) {
  return emit(out, [&] { return darboux2::omega(second(cfg, mode), grid_of(grid)); });
}

shy_status shy_second_state(const shy_config *cfg, int mode, int n,
                            const shy_grid *grid, shy_state **out) {
  return emit(out, [&] {
    return darboux2::second_order_map(second(cfg, mode), n, grid_of(grid));
  });
}

shy_status shy_classify_json(const shy_config *cfg, char **json) {
  return guard([&] {
    need(cfg, "config");
    need(json, "json");
    *json = nullptr;
    *json = dup_string(darboux1::to_json(darboux1::classify_case(cfg->cfg)));
  });
}

shy_status shy_verify_json(const char *suite, const shy_config *cfg,
                           const shy_grid *grid, char **json, int *pass) {
  return guard([&] {
    need(suite, "suite");
    need(cfg, "config");
    need(json, "json");
    *json = nullptr;
    const auto res = verify::run_suite(suite, cfg->cfg, grid ? grid->grid : nullptr);
    *json = dup_string(verify::to_json(res));
    if (pass)
      *pass = res.pass ? 1 : 0;
  });
}

} // extern "C"
