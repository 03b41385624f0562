#ifndef SUSYHYDRA_H
#define SUSYHYDRA_H

/* C interface to the susyhydra engine. Every fallible call returns a
 * shy_status; on failure shy_last_error() holds a message for the calling
 * thread. Handles are opaque and released with the matching _free. Strings
 * returned through char** are owned by the caller (shy_string_free). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SHY_API __declspec(dllexport)
#else
#define SHY_API __attribute__((visibility("default")))
#endif

typedef enum shy_status {
  SHY_OK = 0,
  SHY_ERR_INVALID_ARGUMENT = 1,
  SHY_ERR_POLE = 2,
  SHY_ERR_DOMAIN = 3,
  SHY_ERR_CONVERGENCE = 4,
  SHY_ERR_GRID_MISMATCH = 5,
  SHY_ERR_TAIL_DIVERGENCE = 6,
  SHY_ERR_SINGULAR_BETA = 7,
  SHY_ERR_UNDETERMINED = 8,
  SHY_ERR_CASE_MISMATCH = 9,
  SHY_ERR_DEGENERATE = 10,
  SHY_ERR_SINGULAR_ETA = 11,
  SHY_ERR_INSUFFICIENT_RANGE = 12,
  SHY_ERR_COLLISION = 13,
  SHY_ERR_PARSE = 14,
  SHY_ERR_IO = 15,
  SHY_ERR_INTERNAL = 99
} shy_status;

typedef struct shy_complex {
  double re;
  double im;
} shy_complex;

typedef struct shy_config shy_config;
typedef struct shy_grid shy_grid;
typedef struct shy_state shy_state;

/* Second-order modes; SHY_MODE_INFER picks the one the seed supports. */
enum { SHY_MODE_INFER = -1, SHY_MODE_ORIGIN_ZERO = 0, SHY_MODE_INFINITY_ZERO = 1 };

SHY_API const char *shy_version(void);
SHY_API const char *shy_last_error(void);
SHY_API const char *shy_status_name(shy_status s);
SHY_API void shy_string_free(char *s);

/* Complex literal "a+bi", "a-bi", "bi" or "a", no spaces. */
SHY_API shy_status shy_parse_complex(const char *text, shy_complex *out);

/* ---- configs and grids ---- */

SHY_API shy_status shy_config_create(int l, shy_complex k, shy_complex alpha,
                                     shy_complex zeta, int allow_real_eps,
                                     shy_config **out);
SHY_API void shy_config_free(shy_config *cfg);
SHY_API shy_complex shy_config_epsilon(const shy_config *cfg);

/* Geometric grid; count <= 0 uses the default node count. */
SHY_API shy_status shy_grid_create(double r_min, double r_max, int count,
                                   shy_grid **out);
/* r in [1e-4, 40 n_max] with the default node count. */
SHY_API shy_status shy_grid_default(int n_max, shy_grid **out);
SHY_API void shy_grid_free(shy_grid *grid);
SHY_API size_t shy_grid_size(const shy_grid *grid);

/* ---- sampled states ---- */

SHY_API void shy_state_free(shy_state *s);
SHY_API size_t shy_state_size(const shy_state *s);
/* Copies up to cap samples; r and values may each be NULL. */
SHY_API shy_status shy_state_samples(const shy_state *s, double *r,
                                     shy_complex *values, size_t cap);
/* Number of analytic derivatives carried. */
SHY_API int shy_state_derivative_order(const shy_state *s);
SHY_API shy_status shy_state_derivative(const shy_state *s, int order,
                                        shy_complex *values, size_t cap);
/* Integrability verdict and fits as JSON. */
SHY_API shy_status shy_state_integrability_json(const shy_state *s, char **json);

SHY_API shy_status shy_hydrogen_potential(int l, const shy_grid *grid,
                                          shy_state **out);
SHY_API shy_status shy_bound_state(int n, int l, const shy_grid *grid,
                                   shy_state **out);
SHY_API shy_status shy_seed(const shy_config *cfg, const shy_grid *grid,
                            shy_state **out);
SHY_API shy_status shy_partner_potential(const shy_config *cfg,
                                         const shy_grid *grid, shy_state **out);
SHY_API shy_status shy_mapped_state(const shy_config *cfg, int n,
                                    const shy_grid *grid, shy_state **out);
/* B applied to r^{l+1} e^{-kappa r}[C M + D U]; SHY_ERR_COLLISION when
 * kappa = k. */
SHY_API shy_status shy_mapped_general_state(const shy_config *cfg,
                                            shy_complex kappa, shy_complex C,
                                            shy_complex D, const shy_grid *grid,
                                            shy_state **out);
SHY_API shy_status shy_kernel_state(const shy_config *cfg, const shy_grid *grid,
                                    shy_state **out);

/* ---- second order ---- */

/* Resolves SHY_MODE_INFER and validates the mode for cfg. */
SHY_API shy_status shy_second_mode(const shy_config *cfg, int mode,
                                   int *resolved);
SHY_API shy_status shy_second_potential(const shy_config *cfg, int mode,
                                        const shy_grid *grid, shy_state **out);
SHY_API shy_status shy_second_omega(const shy_config *cfg, int mode,
                                    const shy_grid *grid, shy_state **out);
SHY_API shy_status shy_second_state(const shy_config *cfg, int mode, int n,
                                    const shy_grid *grid, shy_state **out);

/* ---- reports ---- */

/* ClassificationReport JSON; SHY_ERR_UNDETERMINED when the zero scan cannot
 * decide. */
SHY_API shy_status shy_classify_json(const shy_config *cfg, char **json);
/* Runs a named suite (all, factorization, intertwining, spectra, appendix).
 * grid may be NULL. *pass is 1 when every report passed. */
SHY_API shy_status shy_verify_json(const char *suite, const shy_config *cfg,
                                   const shy_grid *grid, char **json, int *pass);

#ifdef __cplusplus
}
#endif

#endif
