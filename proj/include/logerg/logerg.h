/* Log-ergodic process toolkit: C interface.
 *
 * Every fallible call returns a logerg_status; on failure the message is kept
 * per thread and can be copied out with logerg_copy_last_error(). Objects are
 * opaque handles released by their *_free function (NULL is accepted). */
#ifndef LOGERG_LOGERG_H
#define LOGERG_LOGERG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LOGERG_BUILDING)
#    define LOGERG_API __declspec(dllexport)
#  else
#    define LOGERG_API __declspec(dllimport)
#  endif
#else
#  define LOGERG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LOGERG_ABI_VERSION 1

typedef enum logerg_status {
  LOGERG_OK = 0,
  LOGERG_E_INVALID_ARGUMENT = 1,
  LOGERG_E_DOMAIN = 2,
  LOGERG_E_SINGULAR = 3,
  LOGERG_E_GRID_MISMATCH = 4,
  LOGERG_E_NUMERICAL = 5,
  LOGERG_E_IO = 6,
  LOGERG_E_INTERNAL = 7
} logerg_status;

LOGERG_API int logerg_abi_version(void);
LOGERG_API const char* logerg_status_name(logerg_status status);
/* Copies the calling thread's last error message (NUL-terminated, truncated to
 * cap). Returns the full message length. */
LOGERG_API size_t logerg_copy_last_error(char* buf, size_t cap);

/* ---- paths ---------------------------------------------------------------- */

typedef enum logerg_path_kind {
  LOGERG_PATH_WIENER = 0,
  LOGERG_PATH_PRICE = 1,
  LOGERG_PATH_LOGPRICE = 2,
  LOGERG_PATH_ZPROCESS = 3,
  LOGERG_PATH_THETA = 4
} logerg_path_kind;

typedef struct logerg_path logerg_path;

typedef struct logerg_gbm_params {
  double mu;
  double sigma;
  double s0;
} logerg_gbm_params;

typedef struct logerg_param {
  const char* name;
  double value;
} logerg_param;

LOGERG_API uint64_t logerg_derive_seed(uint64_t master, uint64_t index);

/* Standard Wiener path on [0, horizon] with step dt (snapped so the last node is horizon). */
LOGERG_API logerg_status logerg_path_simulate_wiener(double horizon, double dt, uint64_t seed,
                                                     logerg_path** out);
/* Exact GBM driven by a Wiener path. */
LOGERG_API logerg_status logerg_path_simulate_gbm(const logerg_gbm_params* params,
                                                  const logerg_path* wiener, logerg_path** out);
/* Euler-Maruyama for dY = drift dt + vol dW, Y_0 = y0. */
LOGERG_API logerg_status logerg_path_simulate_ito_constant(double drift, double vol, double y0,
                                                           const logerg_path* wiener,
                                                           logerg_path** out);
/* n values on the uniform grid t_k = k*horizon/(n-1). */
LOGERG_API logerg_status logerg_path_from_values(double horizon, const double* values, size_t n,
                                                 logerg_path_kind kind, logerg_path** out);
LOGERG_API logerg_status logerg_path_read_csv(const char* file, logerg_path_kind fallback,
                                              logerg_path** out);
/* t,value columns after a JSON header line carrying the kind, the seed (when
 * the path has one) and the given parameters. */
LOGERG_API logerg_status logerg_path_write_csv(const logerg_path* path, const char* file,
                                               const logerg_param* params, size_t n_params);
/* t,path_0000,... for paths on one grid. */
LOGERG_API logerg_status logerg_paths_write_wide_csv(const logerg_path* const* paths, size_t n,
                                                     const char* file);
LOGERG_API void logerg_path_free(logerg_path* path);

LOGERG_API size_t logerg_path_size(const logerg_path* path);
LOGERG_API double logerg_path_horizon(const logerg_path* path);
LOGERG_API double logerg_path_step(const logerg_path* path);
LOGERG_API logerg_path_kind logerg_path_get_kind(const logerg_path* path);
/* Returns nonzero and stores the seed when the path was simulated from one. */
LOGERG_API int logerg_path_seed(const logerg_path* path, uint64_t* seed);
LOGERG_API logerg_status logerg_path_copy_values(const logerg_path* path, double* out, size_t cap);
LOGERG_API logerg_status logerg_path_copy_times(const logerg_path* path, double* out, size_t cap);
LOGERG_API logerg_status logerg_path_log(const logerg_path* price, logerg_path** out);

/* ---- ergodic-maker operator --------------------------------------------- */

typedef double (*logerg_coef_fn)(double t, double x, void* ctx);
typedef struct logerg_decomposition logerg_decomposition;

/* Y = y0 + D + R with D = integral of mu(t, Y). */
LOGERG_API logerg_status logerg_decompose(const logerg_path* log_path, const logerg_path* wiener,
                                          logerg_coef_fn mu, void* ctx,
                                          logerg_decomposition** out);
LOGERG_API logerg_status logerg_decompose_gbm(const logerg_gbm_params* params,
                                              const logerg_path* log_path,
                                              const logerg_path* wiener,
                                              logerg_decomposition** out);
LOGERG_API void logerg_decomposition_free(logerg_decomposition* dec);
LOGERG_API double logerg_decomposition_y0(const logerg_decomposition* dec);
LOGERG_API logerg_status logerg_apply_emo(const logerg_decomposition* dec, double beta,
                                          double w_terminal, logerg_path** z_out);
LOGERG_API logerg_status logerg_apply_iemo(const logerg_path* z, double c, double beta,
                                           double w_terminal, const logerg_decomposition* shape,
                                           logerg_path** y_out);
/* Closed-form Z of a GBM from its Wiener path (T = grid horizon). */
LOGERG_API logerg_status logerg_z_from_wiener(const logerg_gbm_params* params,
                                              const logerg_path* wiener, double beta,
                                              logerg_path** z_out);
/* Decompose a GBM price path and apply the EMO; W_T is recovered from the
 * martingale part and returned through w_terminal (may be NULL). */
LOGERG_API logerg_status logerg_z_from_price(const logerg_gbm_params* params,
                                             const logerg_path* price, double beta,
                                             logerg_path** z_out, double* w_terminal);
/* Diagnostic (1/T') int_0^T' (1 - tau/T') Cov(tau) dtau of an ensemble.
 * anchored = 0: Cov(tau) = Var(X_tau); otherwise Cov(X_anchor, X_anchor+tau). */
LOGERG_API logerg_status logerg_ergodicity_diagnostic(const logerg_path* const* ensemble,
                                                      size_t n_paths, const double* horizons,
                                                      size_t n_horizons, int anchored,
                                                      double anchor, double* out);
/* Same diagnostic for GBM-derived Z, rebuilt with T = T' per horizon. */
LOGERG_API logerg_status logerg_z_ergodicity_curve(const logerg_gbm_params* params, double beta,
                                                   double dt, const double* horizons,
                                                   size_t n_horizons, size_t n_paths,
                                                   uint64_t master_seed, double* out);

/* ---- trading ---------------------------------------------------------------- */

typedef struct logerg_trade logerg_trade;

typedef struct logerg_trade_options {
  double eps;             /* recurrence band; 0 = sign changes only */
  double long_leverage;   /* l */
  double short_leverage;  /* s */
  int literal_indicator;  /* nonzero: class indicator = class nonempty */
} logerg_trade_options;

typedef struct logerg_excursion {
  size_t index;
  double start;
  double end;
  double delta;
  int side; /* +1 above the reference level, -1 below */
  double peak;
  double oet;
  double entry_price; /* NaN without a price path */
  double exit_price;
} logerg_excursion;

typedef struct logerg_sojourn {
  int has_above;
  int has_below;
  double mean_above;
  double mean_below;
  size_t count_above;
  size_t count_below;
} logerg_sojourn;

typedef enum logerg_format { LOGERG_FORMAT_CSV = 0, LOGERG_FORMAT_JSON = 1 } logerg_format;

LOGERG_API void logerg_trade_options_default(logerg_trade_options* options);
/* price may be NULL (no ledger, no profit). */
LOGERG_API logerg_status logerg_trade_analyze(const logerg_path* z, const logerg_path* price,
                                              const logerg_trade_options* options,
                                              logerg_trade** out);
LOGERG_API void logerg_trade_free(logerg_trade* trade);
LOGERG_API size_t logerg_trade_recurrence_count(const logerg_trade* trade);
LOGERG_API logerg_status logerg_trade_copy_recurrences(const logerg_trade* trade, double* out,
                                                       size_t cap);
LOGERG_API size_t logerg_trade_excursion_count(const logerg_trade* trade);
LOGERG_API logerg_status logerg_trade_get_excursion(const logerg_trade* trade, size_t i,
                                                    logerg_excursion* out);
LOGERG_API logerg_status logerg_trade_sojourn(const logerg_trade* trade, logerg_sojourn* out);
LOGERG_API logerg_status logerg_trade_profit(const logerg_trade* trade, double* out);
LOGERG_API logerg_status logerg_trade_write_signals(const logerg_trade* trade, const char* file,
                                                    logerg_format format);
LOGERG_API logerg_status logerg_trade_write_excursions(const logerg_trade* trade, const char* file);
/* Order-execution-time relations with the price-level GBM coefficients. */
LOGERG_API logerg_status logerg_trade_write_bound_report(const logerg_trade* trade,
                                                         const logerg_gbm_params* params,
                                                         const char* file, logerg_format format);
LOGERG_API logerg_status logerg_trade_write_fig2(const logerg_trade* trade, const char* file);
LOGERG_API logerg_status logerg_write_fig1(const logerg_path* price, const char* file);

typedef enum logerg_sde_form {
  LOGERG_SDE_THEOREM = 0,
  LOGERG_SDE_PRINTED_FINAL = 1
} logerg_sde_form;

/* Euler scheme of the recurrence-time SDE from node round(start_time/dt).
 * Writes up to cap values; *written is the count, *halted_at the node where W
 * changed sign or SIZE_MAX. */
LOGERG_API logerg_status logerg_recurrence_sde(const logerg_gbm_params* params,
                                               const logerg_path* wiener, double tau0,
                                               logerg_sde_form form, double start_time,
                                               double* out, size_t cap, size_t* written,
                                               size_t* halted_at);

/* ---- rotation ----------------------------------------------------------- */

LOGERG_API double logerg_rotate(double x, double theta);
LOGERG_API double logerg_orbit_point(double x, double theta, uint64_t k);
/* steps may be NULL. */
LOGERG_API logerg_status logerg_orbit(double x, double theta, size_t n, uint64_t* steps,
                                      double* xs);
LOGERG_API logerg_status logerg_write_orbit_csv(double x, double theta, size_t n,
                                                const char* file);
LOGERG_API logerg_status logerg_equidistribution(double theta, double a, double b, double x0,
                                                 size_t n, double* frequency);
/* max_steps = 0 picks a cap from the arc length. */
LOGERG_API logerg_status logerg_kac(double theta, double a, double b, double x0,
                                    size_t n_returns, uint64_t max_steps, double* mean);
LOGERG_API logerg_status logerg_birkhoff_trig(double constant, const double* cos_coeffs,
                                              size_t n_cos, const double* sin_coeffs,
                                              size_t n_sin, double x0, double theta, size_t n,
                                              double* out);
LOGERG_API logerg_status logerg_birkhoff_tabulated(const double* samples, size_t n_samples,
                                                   double x0, double theta, size_t n,
                                                   double* out);
LOGERG_API logerg_status logerg_theta_process(const logerg_path* z, const logerg_path* price,
                                              double strike, double beta, double w_terminal,
                                              logerg_path** out);
/* Per anchor: ensemble mean and variance; *passed is 1 when every |mean| <= 3 stderr. */
LOGERG_API logerg_status logerg_theta_moment_check(const logerg_path* const* thetas, size_t n,
                                                   const double* anchors, size_t n_anchors,
                                                   size_t min_paths, double* means,
                                                   double* variances, int* passed);
/* t,price,z,theta,circle_x,circle_re,circle_im */
LOGERG_API logerg_status logerg_write_fig3(const logerg_path* price, const logerg_path* z,
                                           double strike, double beta, double w_terminal,
                                           const char* file);

/* ---- pricing -------------------------------------------------------------- */

typedef struct logerg_pricing_inputs {
  double r, K, T, beta, mu, sigma, tau, z, w_terminal, s_t0, X, t;
} logerg_pricing_inputs;

typedef struct logerg_coefficients {
  double q, B, eta, p, lambda, y, a, b;
} logerg_coefficients;

LOGERG_API void logerg_pricing_inputs_default(logerg_pricing_inputs* in);
LOGERG_API double logerg_normal_cdf(double x);
LOGERG_API logerg_status logerg_gamma_delta(double spot, double strike, double* out);
LOGERG_API logerg_status logerg_derive_coefficients(const logerg_pricing_inputs* in,
                                                    logerg_coefficients* out);
/* negative (may be NULL) is set to 1 when the price came out below zero. */
LOGERG_API logerg_status logerg_price_rotation(const logerg_pricing_inputs* in, double* price,
                                               int* negative);
LOGERG_API logerg_status logerg_price_ergodic_bs(const logerg_pricing_inputs* in, double* price,
                                                 int* negative);
/* Non-positive resolution arguments select the defaults. */
LOGERG_API logerg_status logerg_price_pde(const logerg_pricing_inputs* in, double nodes_per_std,
                                          double half_width_std, double* price);
/* Runs every engine on each point; per-row domain errors land in the output
 * rather than failing the call. json_file may be NULL. */
LOGERG_API logerg_status logerg_price_sweep(const logerg_pricing_inputs* points, size_t n,
                                            const char* csv_file, const char* json_file,
                                            size_t* rows_with_errors);

typedef enum logerg_heat_method {
  LOGERG_HEAT_CONVOLUTION = 0,
  LOGERG_HEAT_EXPLICIT = 1,
  LOGERG_HEAT_IMPLICIT = 2,
  LOGERG_HEAT_CRANK_NICOLSON = 3
} logerg_heat_method;

/* U_tau = (eta/2) U_yy on y_j = lower + j*spacing; out receives U(., tau_end).
 * Finite-difference edges are held at their initial values. */
LOGERG_API logerg_status logerg_heat_solve(double eta, double lower, double spacing,
                                           const double* initial, size_t count, double tau_end,
                                           logerg_heat_method method, double dt, double* out);

/* ---- validation --------------------------------------------------------- */

typedef struct logerg_criterion_result {
  int id;
  const char* name;
  int passed;
  const char* detail;
  double seconds;
} logerg_criterion_result;

typedef void (*logerg_criterion_cb)(const logerg_criterion_result* result, void* ctx);

LOGERG_API int logerg_criterion_count(void);
/* only = 0 runs every criterion. *all_passed may be NULL. */
LOGERG_API logerg_status logerg_validate(int only, double tolerance_scale,
                                         logerg_criterion_cb callback, void* ctx,
                                         int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* LOGERG_LOGERG_H */
