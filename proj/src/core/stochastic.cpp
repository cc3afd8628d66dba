#include "stochastic.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "random.hpp"

namespace logerg::stochastic {

WienerPath::WienerPath(SamplePath path, std::uint64_t seed)
    : path_(std::move(path)), seed_(seed) {
  if (path_.kind() != PathKind::kWiener) {
    fail(ErrorCode::kInvalidArgument, "wiener path: wrong path kind");
  }
  if (path_[0] != 0.0) fail(ErrorCode::kInvalidArgument, "wiener path: W_0 must be 0");
}

void GbmParams::validate() const {
  if (!std::isfinite(mu)) fail(ErrorCode::kInvalidArgument, "gbm: mu must be finite");
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    fail(ErrorCode::kInvalidArgument,
         "gbm: sigma must be positive, got " + std::to_string(sigma));
  }
  if (!std::isfinite(s0) || s0 <= 0.0) {
    fail(ErrorCode::kInvalidArgument, "gbm: s0 must be positive, got " + std::to_string(s0));
  }
}

ItoParams ItoParams::constant(double drift, double vol, double y0) {
  return ItoParams{[drift](double, double) { return drift; },
                   [vol](double, double) { return vol; }, y0};
}

ItoParams ItoParams::log_gbm(const GbmParams& gbm) {
  return constant(gbm.q(), gbm.sigma, std::log(gbm.s0));
}

WienerPath simulate_wiener(const TimeGrid& grid, std::uint64_t seed) {
  NormalStream normals(seed);
  const double scale = std::sqrt(grid.step());
  std::vector<double> w(grid.size());
  w[0] = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) w[k] = w[k - 1] + scale * normals.next();
  return WienerPath(SamplePath(grid, std::move(w), PathKind::kWiener), seed);
}

std::vector<WienerPath> simulate_wiener_ensemble(const TimeGrid& grid,
                                                 std::uint64_t master_seed,
                                                 std::size_t count) {
  std::vector<WienerPath> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(simulate_wiener(grid, derive_seed(master_seed, i)));
  }
  return out;
}

SamplePath simulate_gbm(const GbmParams& params, const WienerPath& wiener) {
  params.validate();
  const TimeGrid& grid = wiener.grid();
  const double q = params.q();
  std::vector<double> s(grid.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k] = params.s0 * std::exp(q * grid.time(k) + params.sigma * wiener[k]);
  }
  return SamplePath(grid, std::move(s), PathKind::kPrice);
}

SamplePath simulate_ito(const ItoParams& params, const WienerPath& wiener) {
  if (!params.mu || !params.sigma) {
    fail(ErrorCode::kInvalidArgument, "ito: drift and volatility functions are required");
  }
  const TimeGrid& grid = wiener.grid();
  const double dt = grid.step();
  std::vector<double> y(grid.size());
  y[0] = params.y0;
  for (std::size_t k = 0; k + 1 < y.size(); ++k) {
    const double t = grid.time(k);
    const double drift = params.mu(t, y[k]);
    const double vol = params.sigma(t, y[k]);
    if (!std::isfinite(drift) || !std::isfinite(vol)) {
      fail(ErrorCode::kNumerical, "ito: non-finite coefficient at step " + std::to_string(k) +
                                      " (t=" + std::to_string(t) + ", x=" + std::to_string(y[k]) +
                                      ")");
    }
    if (vol < 0.0) {
      fail(ErrorCode::kDomain, "ito: negative volatility at step " + std::to_string(k));
    }
    y[k + 1] = y[k] + drift * dt + vol * wiener.increment(k);
  }
  return SamplePath(grid, std::move(y), PathKind::kLogPrice);
}

SamplePath log_path(const SamplePath& price) {
  if (price.kind() != PathKind::kPrice) {
    fail(ErrorCode::kInvalidArgument, "log_path: expected a price path");
  }
  std::vector<double> y(price.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!(price[k] > 0.0)) {
      fail(ErrorCode::kDomain, "log_path: non-positive value at index " + std::to_string(k));
    }
    y[k] = std::log(price[k]);
  }
  return SamplePath(price.grid(), std::move(y), PathKind::kLogPrice);
}

}  // namespace logerg::stochastic
