#include "logerg/logerg.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "ergodic.hpp"
#include "error.hpp"
#include "heat.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "pricing.hpp"
#include "random.hpp"
#include "rotation.hpp"
#include "stochastic.hpp"
#include "trading.hpp"
#include "validation.hpp"

struct logerg_path {
  logerg::SamplePath path;
  std::optional<std::uint64_t> seed;
};

struct logerg_decomposition {
  logerg::ergodic::DecomposedPath dec;
};

struct logerg_trade {
  logerg::SamplePath z;
  std::optional<logerg::SamplePath> price;
  logerg::trading::RecurrenceSet recurrences;
  std::vector<logerg::trading::Excursion> excursions;
  std::optional<logerg::trading::TradeLedger> ledger;
  logerg::trading::IndicatorMode mode = logerg::trading::IndicatorMode::kPerExcursion;
};

namespace {

using logerg::ErrorCode;
using logerg::fail;
using logerg::PathKind;
using logerg::SamplePath;

thread_local std::string g_last_error;

logerg_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return LOGERG_E_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return LOGERG_E_DOMAIN;
    case ErrorCode::kSingular: return LOGERG_E_SINGULAR;
    case ErrorCode::kGridMismatch: return LOGERG_E_GRID_MISMATCH;
    case ErrorCode::kNumerical: return LOGERG_E_NUMERICAL;
    case ErrorCode::kIo: return LOGERG_E_IO;
  }
  return LOGERG_E_INTERNAL;
}

template <class F>
logerg_status guard(F&& f) noexcept {
  try {
    f();
    return LOGERG_OK;
  } catch (const logerg::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LOGERG_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOGERG_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return LOGERG_E_INTERNAL;
  }
}

template <class T>
T* need(T* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
  return p;
}

PathKind to_kind(logerg_path_kind k) {
  switch (k) {
    case LOGERG_PATH_WIENER: return PathKind::kWiener;
    case LOGERG_PATH_PRICE: return PathKind::kPrice;
    case LOGERG_PATH_LOGPRICE: return PathKind::kLogPrice;
    case LOGERG_PATH_ZPROCESS: return PathKind::kZProcess;
    case LOGERG_PATH_THETA: return PathKind::kTheta;
  }
  fail(ErrorCode::kInvalidArgument, "unknown path kind");
}

logerg_path_kind from_kind(PathKind k) {
  switch (k) {
    case PathKind::kWiener: return LOGERG_PATH_WIENER;
    case PathKind::kPrice: return LOGERG_PATH_PRICE;
    case PathKind::kLogPrice: return LOGERG_PATH_LOGPRICE;
    case PathKind::kZProcess: return LOGERG_PATH_ZPROCESS;
    case PathKind::kTheta: return LOGERG_PATH_THETA;
  }
  return LOGERG_PATH_PRICE;
}

logerg::stochastic::GbmParams gbm_of(const logerg_gbm_params* p) {
  need(p, "gbm params");
  logerg::stochastic::GbmParams g{p->mu, p->sigma, p->s0};
  g.validate();
  return g;
}

logerg::stochastic::WienerPath wiener_of(const logerg_path* p) {
  need(p, "wiener path");
  return logerg::stochastic::WienerPath(p->path, p->seed.value_or(0));
}

logerg_path* wrap(SamplePath path, std::optional<std::uint64_t> seed = std::nullopt) {
  return new logerg_path{std::move(path), seed};
}

void copy_out(std::span<const double> src, double* out, std::size_t cap) {
  if (src.empty()) return;
  need(out, "output buffer");
  if (cap < src.size()) {
    fail(ErrorCode::kInvalidArgument, "output buffer holds " + std::to_string(cap) +
                                          " values, need " + std::to_string(src.size()));
  }
  std::copy(src.begin(), src.end(), out);
}

std::ofstream open_out(const char* file) {
  need(file, "file name");
  std::ofstream os(file, std::ios::binary);
  if (!os) fail(ErrorCode::kIo, std::string("cannot open '") + file + "' for writing");
  return os;
}

void finish(std::ofstream& os, const char* file) {
  os.flush();
  if (!os) fail(ErrorCode::kIo, std::string("write failed: '") + file + "'");
}

logerg::pricing::PricingInputs inputs_of(const logerg_pricing_inputs* in) {
  need(in, "pricing inputs");
  logerg::pricing::PricingInputs p;
  p.r = in->r;
  p.K = in->K;
  p.T = in->T;
  p.beta = in->beta;
  p.mu = in->mu;
  p.sigma = in->sigma;
  p.tau = in->tau;
  p.z = in->z;
  p.w_terminal = in->w_terminal;
  p.s_t0 = in->s_t0;
  p.X = in->X;
  p.t = in->t;
  return p;
}

logerg::ergodic::EmoConfig emo_of(const SamplePath& on, double beta, double w_terminal) {
  return logerg::ergodic::EmoConfig{beta, on.grid().horizon(), w_terminal};
}

}  // namespace

extern "C" {

int logerg_abi_version(void) { return LOGERG_ABI_VERSION; }

const char* logerg_status_name(logerg_status status) {
  switch (status) {
    case LOGERG_OK: return "ok";
    case LOGERG_E_INVALID_ARGUMENT: return "invalid argument";
    case LOGERG_E_DOMAIN: return "domain error";
    case LOGERG_E_SINGULAR: return "singular";
    case LOGERG_E_GRID_MISMATCH: return "grid mismatch";
    case LOGERG_E_NUMERICAL: return "numerical failure";
    case LOGERG_E_IO: return "i/o error";
    case LOGERG_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t logerg_copy_last_error(char* buf, size_t cap) {
  const std::size_t len = g_last_error.size();
  if (buf != nullptr && cap > 0) {
    const std::size_t n = std::min(len, cap - 1);
    std::memcpy(buf, g_last_error.data(), n);
    buf[n] = '\0';
  }
  return len;
}

uint64_t logerg_derive_seed(uint64_t master, uint64_t index) {
  return logerg::derive_seed(master, index);
}

logerg_status logerg_path_simulate_wiener(double horizon, double dt, uint64_t seed,
                                          logerg_path** out) {
  return guard([&] {
    need(out, "out");
    const auto grid = logerg::TimeGrid::uniform(horizon, dt);
    auto w = logerg::stochastic::simulate_wiener(grid, seed);
    *out = wrap(w.path(), seed);
  });
}

logerg_status logerg_path_simulate_gbm(const logerg_gbm_params* params, const logerg_path* wiener,
                                       logerg_path** out) {
  return guard([&] {
    need(out, "out");
    const auto w = wiener_of(wiener);
    *out = wrap(logerg::stochastic::simulate_gbm(gbm_of(params), w), wiener->seed);
  });
}

logerg_status logerg_path_simulate_ito_constant(double drift, double vol, double y0,
                                                const logerg_path* wiener, logerg_path** out) {
  return guard([&] {
    need(out, "out");
    const auto w = wiener_of(wiener);
    const auto params = logerg::stochastic::ItoParams::constant(drift, vol, y0);
    *out = wrap(logerg::stochastic::simulate_ito(params, w), wiener->seed);
  });
}

logerg_status logerg_path_from_values(double horizon, const double* values, size_t n,
                                      logerg_path_kind kind, logerg_path** out) {
  return guard([&] {
    need(out, "out");
    need(values, "values");
    if (n < 3) fail(ErrorCode::kInvalidArgument, "path needs at least 3 values");
    const auto grid = logerg::TimeGrid::uniform(horizon, horizon / static_cast<double>(n - 1));
    if (grid.size() != n) fail(ErrorCode::kInvalidArgument, "grid size mismatch");
    *out = wrap(SamplePath(grid, std::vector<double>(values, values + n), to_kind(kind)));
  });
}

logerg_status logerg_path_read_csv(const char* file, logerg_path_kind fallback, logerg_path** out) {
  return guard([&] {
    need(out, "out");
    need(file, "file name");
    logerg::io::PathHeader header;
    auto path = logerg::io::read_path_file(file, to_kind(fallback), &header);
    *out = wrap(std::move(path), header.seed);
  });
}

logerg_status logerg_path_write_csv(const logerg_path* path, const char* file,
                                    const logerg_param* params, size_t n_params) {
  return guard([&] {
    need(path, "path");
    logerg::io::PathHeader header;
    header.kind = path->path.kind();
    header.seed = path->seed;
    if (n_params > 0) need(params, "params");
    for (std::size_t i = 0; i < n_params; ++i) {
      header.params.emplace_back(need(params[i].name, "param name"), params[i].value);
    }
    auto os = open_out(file);
    logerg::io::write_path_csv(os, path->path, &header);
    finish(os, file);
  });
}

logerg_status logerg_paths_write_wide_csv(const logerg_path* const* paths, size_t n,
                                          const char* file) {
  return guard([&] {
    need(paths, "paths");
    std::vector<SamplePath> ps;
    ps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ps.push_back(need(paths[i], "path")->path);
    auto os = open_out(file);
    logerg::io::write_wide_csv(os, ps);
    finish(os, file);
  });
}

void logerg_path_free(logerg_path* path) { delete path; }

size_t logerg_path_size(const logerg_path* path) { return path ? path->path.size() : 0; }

double logerg_path_horizon(const logerg_path* path) {
  return path ? path->path.grid().horizon() : std::numeric_limits<double>::quiet_NaN();
}

double logerg_path_step(const logerg_path* path) {
  return path ? path->path.grid().step() : std::numeric_limits<double>::quiet_NaN();
}

logerg_path_kind logerg_path_get_kind(const logerg_path* path) {
  return path ? from_kind(path->path.kind()) : LOGERG_PATH_PRICE;
}

int logerg_path_seed(const logerg_path* path, uint64_t* seed) {
  if (path == nullptr || !path->seed) return 0;
  if (seed) *seed = *path->seed;
  return 1;
}

logerg_status logerg_path_copy_values(const logerg_path* path, double* out, size_t cap) {
  return guard([&] { copy_out(need(path, "path")->path.values(), out, cap); });
}

logerg_status logerg_path_copy_times(const logerg_path* path, double* out, size_t cap) {
  return guard([&] { copy_out(need(path, "path")->path.grid().times(), out, cap); });
}

logerg_status logerg_path_log(const logerg_path* price, logerg_path** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(logerg::stochastic::log_path(need(price, "price")->path), price->seed);
  });
}

logerg_status logerg_decompose(const logerg_path* log_path, const logerg_path* wiener,
                               logerg_coef_fn mu, void* ctx, logerg_decomposition** out) {
  return guard([&] {
    need(out, "out");
    need(log_path, "log path");
    need(mu, "drift function");
    logerg::stochastic::ItoParams params;
    params.mu = [mu, ctx](double t, double x) { return mu(t, x, ctx); };
    params.sigma = [](double, double) { return 0.0; };
    params.y0 = log_path->path[0];
    *out = new logerg_decomposition{
        logerg::ergodic::decompose(log_path->path, params, wiener_of(wiener))};
  });
}

logerg_status logerg_decompose_gbm(const logerg_gbm_params* params, const logerg_path* log_path,
                                   const logerg_path* wiener, logerg_decomposition** out) {
  return guard([&] {
    need(out, "out");
    need(log_path, "log path");
    const auto ito = logerg::stochastic::ItoParams::log_gbm(gbm_of(params));
    *out = new logerg_decomposition{
        logerg::ergodic::decompose(log_path->path, ito, wiener_of(wiener))};
  });
}

void logerg_decomposition_free(logerg_decomposition* dec) { delete dec; }

double logerg_decomposition_y0(const logerg_decomposition* dec) {
  return dec ? dec->dec.y0 : std::numeric_limits<double>::quiet_NaN();
}

logerg_status logerg_apply_emo(const logerg_decomposition* dec, double beta, double w_terminal,
                               logerg_path** z_out) {
  return guard([&] {
    need(z_out, "out");
    need(dec, "decomposition");
    const logerg::ergodic::EmoConfig cfg{beta, dec->dec.grid.horizon(), w_terminal};
    *z_out = wrap(logerg::ergodic::apply_emo(dec->dec, cfg));
  });
}

logerg_status logerg_apply_iemo(const logerg_path* z, double c, double beta, double w_terminal,
                                const logerg_decomposition* shape, logerg_path** y_out) {
  return guard([&] {
    need(y_out, "out");
    need(z, "z");
    need(shape, "decomposition");
    *y_out = wrap(logerg::ergodic::apply_iemo(z->path, c, emo_of(z->path, beta, w_terminal),
                                              shape->dec));
  });
}

logerg_status logerg_z_from_wiener(const logerg_gbm_params* params, const logerg_path* wiener,
                                   double beta, logerg_path** z_out) {
  return guard([&] {
    need(z_out, "out");
    *z_out = wrap(logerg::ergodic::construct_z_gbm(gbm_of(params), wiener_of(wiener), beta),
                  wiener->seed);
  });
}

logerg_status logerg_z_from_price(const logerg_gbm_params* params, const logerg_path* price,
                                  double beta, logerg_path** z_out, double* w_terminal) {
  return guard([&] {
    need(z_out, "out");
    need(price, "price");
    auto res = logerg::ergodic::z_from_gbm_price(gbm_of(params), price->path, beta);
    if (w_terminal) *w_terminal = res.config.w_terminal;
    *z_out = wrap(std::move(res.z), price->seed);
  });
}

logerg_status logerg_ergodicity_diagnostic(const logerg_path* const* ensemble, size_t n_paths,
                                           const double* horizons, size_t n_horizons,
                                           int anchored, double anchor, double* out) {
  return guard([&] {
    need(ensemble, "ensemble");
    need(horizons, "horizons");
    need(out, "out");
    std::vector<SamplePath> ps;
    ps.reserve(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) ps.push_back(need(ensemble[i], "path")->path);
    logerg::ergodic::DiagnosticOptions opt;
    opt.mode = anchored ? logerg::ergodic::CovarianceMode::kAnchoredLag
                        : logerg::ergodic::CovarianceMode::kPointwise;
    opt.anchor = anchor;
    const auto curve = logerg::ergodic::ergodicity_diagnostic(
        ps, std::span<const double>(horizons, n_horizons), opt);
    std::copy(curve.values.begin(), curve.values.end(), out);
  });
}

logerg_status logerg_z_ergodicity_curve(const logerg_gbm_params* params, double beta, double dt,
                                        const double* horizons, size_t n_horizons,
                                        size_t n_paths, uint64_t master_seed, double* out) {
  return guard([&] {
    need(horizons, "horizons");
    need(out, "out");
    const auto curve = logerg::ergodic::z_ergodicity_curve(
        gbm_of(params), beta, dt, std::span<const double>(horizons, n_horizons), n_paths,
        master_seed);
    std::copy(curve.values.begin(), curve.values.end(), out);
  });
}

void logerg_trade_options_default(logerg_trade_options* options) {
  if (options == nullptr) return;
  options->eps = 0.0;
  options->long_leverage = 1.0;
  options->short_leverage = 1.0;
  options->literal_indicator = 0;
}

logerg_status logerg_trade_analyze(const logerg_path* z, const logerg_path* price,
                                   const logerg_trade_options* options, logerg_trade** out) {
  return guard([&] {
    need(out, "out");
    need(z, "z");
    logerg_trade_options opt;
    logerg_trade_options_default(&opt);
    if (options) opt = *options;
    auto t = std::make_unique<logerg_trade>(logerg_trade{z->path, std::nullopt, {}, {}, std::nullopt});
    t->recurrences = logerg::trading::detect_recurrences(z->path, opt.eps);
    t->excursions = logerg::trading::build_excursions(z->path, t->recurrences);
    t->mode = opt.literal_indicator ? logerg::trading::IndicatorMode::kLiteral
                                    : logerg::trading::IndicatorMode::kPerExcursion;
    if (price) {
      logerg::require_same_grid(z->path.grid(), price->path.grid(), "trade analysis");
      t->price = price->path;
      t->ledger = logerg::trading::build_ledger(price->path, t->excursions, opt.long_leverage,
                                                opt.short_leverage);
    }
    *out = t.release();
  });
}

void logerg_trade_free(logerg_trade* trade) { delete trade; }

size_t logerg_trade_recurrence_count(const logerg_trade* trade) {
  return trade ? trade->recurrences.taus.size() : 0;
}

logerg_status logerg_trade_copy_recurrences(const logerg_trade* trade, double* out, size_t cap) {
  return guard([&] { copy_out(need(trade, "trade")->recurrences.taus, out, cap); });
}

size_t logerg_trade_excursion_count(const logerg_trade* trade) {
  return trade ? trade->excursions.size() : 0;
}

logerg_status logerg_trade_get_excursion(const logerg_trade* trade, size_t i,
                                         logerg_excursion* out) {
  return guard([&] {
    need(trade, "trade");
    need(out, "out");
    if (i >= trade->excursions.size()) fail(ErrorCode::kInvalidArgument, "excursion index out of range");
    const auto& e = trade->excursions[i];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = logerg_excursion{e.index, e.start, e.end, e.delta,
                            e.side == logerg::trading::Side::kAbove ? 1 : -1, e.peak, e.oet,
                            trade->ledger ? trade->ledger->entry_price[i] : nan,
                            trade->ledger ? trade->ledger->exit_price[i] : nan};
  });
}

logerg_status logerg_trade_sojourn(const logerg_trade* trade, logerg_sojourn* out) {
  return guard([&] {
    need(trade, "trade");
    need(out, "out");
    const auto s = logerg::trading::sojourn_stats(trade->excursions);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = logerg_sojourn{s.mean_above ? 1 : 0, s.mean_below ? 1 : 0, s.mean_above.value_or(nan),
                          s.mean_below.value_or(nan), s.count_above, s.count_below};
  });
}

logerg_status logerg_trade_profit(const logerg_trade* trade, double* out) {
  return guard([&] {
    need(trade, "trade");
    need(out, "out");
    if (!trade->ledger) fail(ErrorCode::kInvalidArgument, "profit needs a price path");
    *out = logerg::trading::trade_profit(*trade->ledger, trade->mode);
  });
}

logerg_status logerg_trade_write_signals(const logerg_trade* trade, const char* file,
                                         logerg_format format) {
  return guard([&] {
    need(trade, "trade");
    const auto report = logerg::trading::generate_signals(trade->z, trade->excursions);
    auto os = open_out(file);
    if (format == LOGERG_FORMAT_JSON) {
      os << logerg::io::signals_json(report) << '\n';
    } else {
      logerg::io::write_signals_csv(os, report);
    }
    finish(os, file);
  });
}

logerg_status logerg_trade_write_excursions(const logerg_trade* trade, const char* file) {
  return guard([&] {
    need(trade, "trade");
    logerg::trading::TradeLedger ledger;
    if (trade->ledger) {
      ledger = *trade->ledger;
    } else {
      ledger.excursions = trade->excursions;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      ledger.entry_price.assign(trade->excursions.size(), nan);
      ledger.exit_price.assign(trade->excursions.size(), nan);
    }
    auto os = open_out(file);
    logerg::io::write_excursions_csv(os, ledger);
    finish(os, file);
  });
}

logerg_status logerg_trade_write_bound_report(const logerg_trade* trade,
                                              const logerg_gbm_params* params, const char* file,
                                              logerg_format format) {
  return guard([&] {
    need(trade, "trade");
    const auto g = gbm_of(params);
    logerg::stochastic::ItoParams level;
    level.mu = [g](double, double x) { return g.mu * x; };
    level.sigma = [g](double, double x) { return g.sigma * x; };
    level.y0 = g.s0;
    const SamplePath* state = trade->price ? &*trade->price : nullptr;
    if (!state) {
      // Without a state path the coefficients are evaluated at x = s0.
      level.mu = [g](double, double) { return g.mu * g.s0; };
      level.sigma = [g](double, double) { return g.sigma * g.s0; };
    }
    const auto report = logerg::trading::oet_bound_report(trade->excursions, level, state);
    auto os = open_out(file);
    if (format == LOGERG_FORMAT_JSON) {
      os << logerg::io::bound_report_json(report) << '\n';
    } else {
      logerg::io::write_bound_report_csv(os, report);
    }
    finish(os, file);
  });
}

logerg_status logerg_trade_write_fig2(const logerg_trade* trade, const char* file) {
  return guard([&] {
    need(trade, "trade");
    auto os = open_out(file);
    logerg::io::write_fig2_csv(os, trade->z, trade->recurrences);
    finish(os, file);
  });
}

logerg_status logerg_write_fig1(const logerg_path* price, const char* file) {
  return guard([&] {
    need(price, "price");
    auto os = open_out(file);
    logerg::io::write_fig1_csv(os, price->path);
    finish(os, file);
  });
}

logerg_status logerg_recurrence_sde(const logerg_gbm_params* params, const logerg_path* wiener,
                                    double tau0, logerg_sde_form form, double start_time,
                                    double* out, size_t cap, size_t* written, size_t* halted_at) {
  return guard([&] {
    logerg::trading::RecurrenceSdeOptions opt;
    opt.form = form == LOGERG_SDE_PRINTED_FINAL ? logerg::trading::RecurrenceSdeForm::kPrintedFinal
                                                : logerg::trading::RecurrenceSdeForm::kTheorem;
    opt.start_time = start_time;
    const auto path = logerg::trading::simulate_recurrence_sde(gbm_of(params), wiener_of(wiener),
                                                               tau0, opt);
    copy_out(path.taus, out, cap);
    if (written) *written = path.taus.size();
    if (halted_at) *halted_at = path.halted_at.value_or(SIZE_MAX);
  });
}

double logerg_rotate(double x, double theta) { return logerg::rotation::rotate(x, theta); }

double logerg_orbit_point(double x, double theta, uint64_t k) {
  return logerg::rotation::orbit_point(x, theta, k);
}

logerg_status logerg_orbit(double x, double theta, size_t n, uint64_t* steps, double* xs) {
  return guard([&] {
    need(xs, "xs");
    const auto pts = logerg::rotation::orbit(x, theta, n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = pts[k].x;
      if (steps) steps[k] = pts[k].step;
    }
  });
}

logerg_status logerg_write_orbit_csv(double x, double theta, size_t n, const char* file) {
  return guard([&] {
    const auto pts = logerg::rotation::orbit(x, theta, n);
    auto os = open_out(file);
    logerg::io::write_orbit_csv(os, pts);
    finish(os, file);
  });
}

logerg_status logerg_equidistribution(double theta, double a, double b, double x0, size_t n,
                                      double* frequency) {
  return guard([&] {
    *need(frequency, "frequency") = logerg::rotation::equidistribution_test(theta, a, b, x0, n);
  });
}

logerg_status logerg_kac(double theta, double a, double b, double x0, size_t n_returns,
                         uint64_t max_steps, double* mean) {
  return guard([&] {
    *need(mean, "mean") =
        logerg::rotation::kac_return_time(theta, a, b, x0, n_returns, max_steps).mean;
  });
}

logerg_status logerg_birkhoff_trig(double constant, const double* cos_coeffs, size_t n_cos,
                                   const double* sin_coeffs, size_t n_sin, double x0,
                                   double theta, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    if (n_cos > 0) need(cos_coeffs, "cos coefficients");
    if (n_sin > 0) need(sin_coeffs, "sin coefficients");
    const auto phi = logerg::rotation::TestFunction::trig(
        constant, std::vector<double>(cos_coeffs, cos_coeffs + n_cos),
        std::vector<double>(sin_coeffs, sin_coeffs + n_sin));
    *out = logerg::rotation::birkhoff_average(phi, x0, theta, n);
  });
}

logerg_status logerg_birkhoff_tabulated(const double* samples, size_t n_samples, double x0,
                                        double theta, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    need(samples, "samples");
    const auto phi = logerg::rotation::TestFunction::tabulated(
        std::vector<double>(samples, samples + n_samples));
    *out = logerg::rotation::birkhoff_average(phi, x0, theta, n);
  });
}

logerg_status logerg_theta_process(const logerg_path* z, const logerg_path* price, double strike,
                                   double beta, double w_terminal, logerg_path** out) {
  return guard([&] {
    need(out, "out");
    need(z, "z");
    need(price, "price");
    auto th = logerg::rotation::theta_process(z->path, price->path, strike,
                                              emo_of(z->path, beta, w_terminal));
    *out = wrap(std::move(th.theta), z->seed);
  });
}

logerg_status logerg_theta_moment_check(const logerg_path* const* thetas, size_t n,
                                        const double* anchors, size_t n_anchors, size_t min_paths,
                                        double* means, double* variances, int* passed) {
  return guard([&] {
    need(thetas, "thetas");
    need(anchors, "anchors");
    std::vector<logerg::rotation::ThetaPath> ens;
    ens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ens.push_back({need(thetas[i], "theta path")->path, {}});
    const auto rep = logerg::rotation::theta_moment_check(
        ens, std::span<const double>(anchors, n_anchors), min_paths);
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
      if (means) means[i] = rep.entries[i].mean;
      if (variances) variances[i] = rep.entries[i].variance;
    }
    if (passed) *passed = rep.passed ? 1 : 0;
  });
}

logerg_status logerg_write_fig3(const logerg_path* price, const logerg_path* z, double strike,
                                double beta, double w_terminal, const char* file) {
  return guard([&] {
    need(price, "price");
    need(z, "z");
    const auto th = logerg::rotation::theta_process(z->path, price->path, strike,
                                                    emo_of(z->path, beta, w_terminal));
    auto os = open_out(file);
    logerg::io::write_fig3_csv(os, price->path, z->path, th);
    finish(os, file);
  });
}

void logerg_pricing_inputs_default(logerg_pricing_inputs* in) {
  if (in == nullptr) return;
  const logerg::pricing::PricingInputs d;
  *in = logerg_pricing_inputs{d.r,   d.K, d.T,          d.beta, d.mu, d.sigma,
                              d.tau, d.z, d.w_terminal, d.s_t0, d.X,  d.t};
}

double logerg_normal_cdf(double x) { return logerg::normal_cdf(x); }

logerg_status logerg_gamma_delta(double spot, double strike, double* out) {
  return guard([&] { *need(out, "out") = logerg::pricing::gamma_delta(spot, strike); });
}

logerg_status logerg_derive_coefficients(const logerg_pricing_inputs* in, logerg_coefficients* out) {
  return guard([&] {
    need(out, "out");
    const auto c = logerg::pricing::derive_coefficients(inputs_of(in));
    *out = logerg_coefficients{c.q, c.B, c.eta, c.p, c.lambda, c.y, c.a, c.b};
  });
}

logerg_status logerg_price_rotation(const logerg_pricing_inputs* in, double* price, int* negative) {
  return guard([&] {
    need(price, "price");
    const auto r = logerg::pricing::price_rotation_call(inputs_of(in));
    *price = r.value;
    if (negative) *negative = r.negative ? 1 : 0;
  });
}

logerg_status logerg_price_ergodic_bs(const logerg_pricing_inputs* in, double* price,
                                      int* negative) {
  return guard([&] {
    need(price, "price");
    const auto r = logerg::pricing::price_ergodic_bs(inputs_of(in));
    *price = r.value;
    if (negative) *negative = r.negative ? 1 : 0;
  });
}

logerg_status logerg_price_pde(const logerg_pricing_inputs* in, double nodes_per_std,
                               double half_width_std, double* price) {
  return guard([&] {
    need(price, "price");
    logerg::pricing::PdeOptions opt;
    if (nodes_per_std > 0.0) opt.nodes_per_std = nodes_per_std;
    if (half_width_std > 0.0) opt.half_width_std = half_width_std;
    *price = logerg::pricing::price_via_pde(inputs_of(in), opt);
  });
}

logerg_status logerg_price_sweep(const logerg_pricing_inputs* points, size_t n,
                                 const char* csv_file, const char* json_file,
                                 size_t* rows_with_errors) {
  return guard([&] {
    if (n > 0) need(points, "points");
    std::vector<logerg::pricing::PricingRecord> recs;
    recs.reserve(n);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
      recs.push_back(logerg::pricing::evaluate_all(inputs_of(&points[i])));
      const auto& r = recs.back();
      bad += (!r.rotation_error.empty() || !r.ergodic_bs_error.empty() || !r.pde_error.empty()) ? 1 : 0;
    }
    auto os = open_out(csv_file);
    os << logerg::io::pricing_csv_header() << '\n';
    for (const auto& r : recs) os << logerg::io::pricing_csv_row(r) << '\n';
    finish(os, csv_file);
    if (json_file) {
      auto js = open_out(json_file);
      js << "[\n";
      for (std::size_t i = 0; i < recs.size(); ++i) {
        js << logerg::io::pricing_json(recs[i]) << (i + 1 < recs.size() ? ",\n" : "\n");
      }
      js << "]\n";
      finish(js, json_file);
    }
    if (rows_with_errors) *rows_with_errors = bad;
  });
}

logerg_status logerg_heat_solve(double eta, double lower, double spacing, const double* initial,
                                size_t count, double tau_end, logerg_heat_method method,
                                double dt, double* out) {
  return guard([&] {
    need(initial, "initial");
    need(out, "out");
    logerg::pricing::HeatProblem hp;
    hp.eta = eta;
    hp.grid = logerg::pricing::SpatialGrid{lower, spacing, count};
    hp.initial.assign(initial, initial + count);
    hp.tau_end = tau_end;
    std::vector<double> u;
    switch (method) {
      case LOGERG_HEAT_CONVOLUTION: u = logerg::pricing::solve_heat_convolution(hp); break;
      case LOGERG_HEAT_EXPLICIT: u = logerg::pricing::solve_heat_fd(hp, dt, logerg::pricing::FdScheme::kExplicit); break;
      case LOGERG_HEAT_IMPLICIT: u = logerg::pricing::solve_heat_fd(hp, dt, logerg::pricing::FdScheme::kImplicit); break;
      case LOGERG_HEAT_CRANK_NICOLSON: u = logerg::pricing::solve_heat_fd(hp, dt, logerg::pricing::FdScheme::kCrankNicolson); break;
      default: fail(ErrorCode::kInvalidArgument, "unknown heat method");
    }
    std::copy(u.begin(), u.end(), out);
  });
}

int logerg_criterion_count(void) { return logerg::validation::kCriterionCount; }

logerg_status logerg_validate(int only, double tolerance_scale, logerg_criterion_cb callback,
                              void* ctx, int* all_passed) {
  return guard([&] {
    logerg::validation::ValidationOptions opt;
    opt.only = only;
    opt.tolerance_scale = tolerance_scale;
    bool ok = true;
    logerg::validation::run_validation(opt, [&](const logerg::validation::CriterionResult& r) {
      ok = ok && r.passed;
      if (callback) {
        const logerg_criterion_result c{r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(),
                                        r.seconds};
        callback(&c, ctx);
      }
    });
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
