#include "ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "numerics.hpp"

namespace logerg::ergodic {

using stochastic::GbmParams;
using stochastic::ItoParams;
using stochastic::WienerPath;

void EmoConfig::validate() const {
  if (!(beta > 1.5) || !std::isfinite(beta)) {
    fail(ErrorCode::kInvalidArgument,
         "emo: inhibition degree beta must exceed 3/2, got " + std::to_string(beta));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    fail(ErrorCode::kInvalidArgument, "emo: horizon T must be positive");
  }
  if (!std::isfinite(w_terminal)) {
    fail(ErrorCode::kInvalidArgument, "emo: W_T must be finite");
  }
}

double EmoConfig::t_pow_beta() const { return std::pow(horizon, beta); }

SamplePath DecomposedPath::reconstruct() const {
  std::vector<double> y(drift_part.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = y0 + drift_part[k] + mart_part[k];
  return SamplePath(grid, std::move(y), PathKind::kLogPrice);
}

DecomposedPath decompose(const SamplePath& log_path, const ItoParams& params,
                         const WienerPath& wiener) {
  require_same_grid(log_path.grid(), wiener.grid(), "decompose");
  if (!params.mu) fail(ErrorCode::kInvalidArgument, "decompose: drift function is required");
  const TimeGrid& grid = log_path.grid();
  const std::size_t n = grid.size();

  std::vector<double> mu(n);
  for (std::size_t k = 0; k < n; ++k) {
    mu[k] = params.mu(grid.time(k), log_path[k]);
    if (!std::isfinite(mu[k])) {
      fail(ErrorCode::kNumerical, "decompose: non-finite drift at index " + std::to_string(k));
    }
  }
  DecomposedPath dec{grid, log_path[0], std::vector<double>(n), std::vector<double>(n)};
  cumulative_trapezoid(mu, grid.step(), dec.drift_part);
  for (std::size_t k = 0; k < n; ++k) {
    dec.mart_part[k] = (log_path[k] - dec.y0) - dec.drift_part[k];
  }
  dec.mart_part[0] = 0.0;
  return dec;
}

namespace {

void require_horizon(const TimeGrid& grid, const EmoConfig& cfg, const char* context) {
  if (std::abs(grid.horizon() - cfg.horizon) > 1e-12 * std::max(1.0, cfg.horizon)) {
    fail(ErrorCode::kGridMismatch, std::string(context) + ": config horizon T=" +
                                       std::to_string(cfg.horizon) + " but grid spans [0," +
                                       std::to_string(grid.horizon()) + "]");
  }
}

}  // namespace

SamplePath apply_emo(const DecomposedPath& dec, const EmoConfig& cfg) {
  cfg.validate();
  require_horizon(dec.grid, cfg, "apply_emo");
  const double scale = cfg.t_pow_beta();
  std::vector<double> z(dec.drift_part.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] = (cfg.w_terminal / scale) * dec.drift_part[k] + dec.mart_part[k] / scale;
  }
  return SamplePath(dec.grid, std::move(z), PathKind::kZProcess);
}

SamplePath apply_iemo(const SamplePath& z, double c, const EmoConfig& cfg,
                      const DecomposedPath& dec_shape) {
  cfg.validate();
  if (cfg.w_terminal == 0.0) {
    fail(ErrorCode::kSingular, "apply_iemo: W_T = 0 makes the drift coefficient T^beta/W_T singular");
  }
  require_same_grid(z.grid(), dec_shape.grid, "apply_iemo");
  require_horizon(z.grid(), cfg, "apply_iemo");
  const double scale = cfg.t_pow_beta();
  std::vector<double> y(z.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double drift_z = (cfg.w_terminal / scale) * dec_shape.drift_part[k];
    const double mart_z = z[k] - drift_z;
    y[k] = c + (scale / cfg.w_terminal) * drift_z + scale * mart_z;
  }
  return SamplePath(z.grid(), std::move(y), PathKind::kLogPrice);
}

SamplePath construct_z_gbm(const GbmParams& params, const WienerPath& wiener, double beta) {
  params.validate();
  const TimeGrid& grid = wiener.grid();
  EmoConfig cfg{beta, grid.horizon(), wiener.terminal()};
  cfg.validate();
  const double scale = cfg.t_pow_beta();
  const double q = params.q();
  std::vector<double> z(grid.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] = (q * grid.time(k) * cfg.w_terminal + params.sigma * wiener[k]) / scale;
  }
  return SamplePath(grid, std::move(z), PathKind::kZProcess);
}

PriceToZ z_from_gbm_price(const GbmParams& params, const SamplePath& price, double beta) {
  params.validate();
  const SamplePath y = stochastic::log_path(price);
  const ItoParams ito = ItoParams::log_gbm(params);
  // decompose() only uses the Wiener path for its grid here.
  const WienerPath grid_carrier(
      SamplePath(price.grid(), std::vector<double>(price.size(), 0.0), PathKind::kWiener), 0);
  DecomposedPath dec = decompose(y, ito, grid_carrier);
  EmoConfig cfg{beta, price.grid().horizon(), dec.mart_part.back() / params.sigma};
  SamplePath z = apply_emo(dec, cfg);
  return PriceToZ{std::move(z), std::move(dec), cfg};
}

SamplePath truncate(const SamplePath& path, double horizon) {
  const TimeGrid& grid = path.grid();
  const double pos = horizon / grid.step();
  const auto k = static_cast<std::size_t>(std::llround(pos));
  if (std::abs(pos - static_cast<double>(k)) > 1e-6 || k > grid.steps() || k < 2) {
    fail(ErrorCode::kInvalidArgument, "truncate: horizon " + std::to_string(horizon) +
                                          " is not a grid node of [0," +
                                          std::to_string(grid.horizon()) + "]");
  }
  std::vector<double> values(path.values().begin(), path.values().begin() + k + 1);
  const TimeGrid sub = TimeGrid::uniform(static_cast<double>(k) * grid.step(), grid.step());
  return SamplePath(sub, std::move(values), path.kind());
}

namespace {

// Centred ensemble covariance of nodes i and j (unbiased, N-1).
double ensemble_cov(std::span<const SamplePath> ensemble, std::size_t i, std::size_t j,
                    std::vector<double>& scratch) {
  const std::size_t count = ensemble.size();
  scratch.resize(count);
  for (std::size_t p = 0; p < count; ++p) scratch[p] = ensemble[p][i];
  const double mean_i = pairwise_sum(scratch) / static_cast<double>(count);
  double mean_j = mean_i;
  if (j != i) {
    for (std::size_t p = 0; p < count; ++p) scratch[p] = ensemble[p][j];
    mean_j = pairwise_sum(scratch) / static_cast<double>(count);
  }
  for (std::size_t p = 0; p < count; ++p) {
    scratch[p] = (ensemble[p][i] - mean_i) * (ensemble[p][j] - mean_j);
  }
  return pairwise_sum(scratch) / static_cast<double>(count - 1);
}

}  // namespace

DiagnosticCurve ergodicity_diagnostic(std::span<const SamplePath> ensemble,
                                      std::span<const double> horizons,
                                      const DiagnosticOptions& options) {
  if (ensemble.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "ergodicity_diagnostic: need at least 2 paths, got " +
                                          std::to_string(ensemble.size()));
  }
  const TimeGrid& grid = ensemble.front().grid();
  for (const auto& path : ensemble) require_same_grid(grid, path.grid(), "ergodicity_diagnostic");

  const double dt = grid.step();
  std::size_t anchor = 0;
  if (options.mode == CovarianceMode::kAnchoredLag) {
    anchor = static_cast<std::size_t>(std::llround(options.anchor / dt));
  }

  DiagnosticCurve curve;
  std::vector<double> scratch;
  double previous = 0.0;
  for (double horizon : horizons) {
    if (!(horizon > previous)) {
      fail(ErrorCode::kInvalidArgument, "ergodicity_diagnostic: horizons must be positive and increasing");
    }
    previous = horizon;
    const auto nodes = static_cast<std::size_t>(std::llround(horizon / dt));
    if (nodes < 2 || anchor + nodes > grid.steps()) {
      fail(ErrorCode::kInvalidArgument,
           "ergodicity_diagnostic: horizon " + std::to_string(horizon) +
               " not covered by the ensemble grid [0," + std::to_string(grid.horizon()) + "]");
    }
    const double span = static_cast<double>(nodes) * dt;
    std::vector<double> integrand(nodes + 1);
    for (std::size_t j = 0; j <= nodes; ++j) {
      const double cov = options.mode == CovarianceMode::kPointwise
                             ? ensemble_cov(ensemble, j, j, scratch)
                             : ensemble_cov(ensemble, anchor, anchor + j, scratch);
      integrand[j] = (1.0 - static_cast<double>(j) * dt / span) * cov;
    }
    curve.horizons.push_back(horizon);
    curve.values.push_back(trapezoid(integrand, dt) / span);
  }
  return curve;
}

DiagnosticCurve z_ergodicity_curve(const GbmParams& params, double beta, double dt,
                                   std::span<const double> horizons, std::size_t paths,
                                   std::uint64_t master_seed) {
  if (horizons.empty()) fail(ErrorCode::kInvalidArgument, "z_ergodicity_curve: no horizons");
  const double longest = *std::max_element(horizons.begin(), horizons.end());
  const TimeGrid grid = TimeGrid::uniform(longest, dt);
  const auto wieners = stochastic::simulate_wiener_ensemble(grid, master_seed, paths);

  DiagnosticCurve curve;
  for (double horizon : horizons) {
    std::vector<SamplePath> zs;
    zs.reserve(paths);
    for (const auto& w : wieners) {
      const WienerPath head(truncate(w.path(), horizon), w.seed());
      zs.push_back(construct_z_gbm(params, head, beta));
    }
    const double h[] = {zs.front().grid().horizon()};
    const DiagnosticCurve one = ergodicity_diagnostic(zs, h);
    curve.horizons.push_back(horizon);
    curve.values.push_back(one.values.front());
  }
  return curve;
}

}  // namespace logerg::ergodic
