#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "grid.hpp"

namespace logerg::stochastic {

/// Standard Wiener path: w[0] = 0, increments N(0, dt) reproducible from seed.
class WienerPath {
 public:
  WienerPath(SamplePath path, std::uint64_t seed);

  const SamplePath& path() const noexcept { return path_; }
  const TimeGrid& grid() const noexcept { return path_.grid(); }
  std::uint64_t seed() const noexcept { return seed_; }
  double operator[](std::size_t k) const noexcept { return path_[k]; }
  double terminal() const noexcept { return path_.back(); }
  double increment(std::size_t k) const noexcept { return path_[k + 1] - path_[k]; }

 private:
  SamplePath path_;
  std::uint64_t seed_;
};

struct GbmParams {
  double mu = 0.1;
  double sigma = 0.2;
  double s0 = 100.0;

  /// Log drift q = mu - sigma^2/2.
  double q() const noexcept { return mu - 0.5 * sigma * sigma; }
  void validate() const;
};

/// Coefficients of dY = mu(t,Y) dt + sigma(t,Y) dW.
struct ItoParams {
  std::function<double(double, double)> mu;
  std::function<double(double, double)> sigma;
  double y0 = 0.0;

  static ItoParams constant(double drift, double vol, double y0);
  /// Log-price coefficients of a GBM: drift q, volatility sigma, y0 = ln s0.
  static ItoParams log_gbm(const GbmParams& gbm);
};

WienerPath simulate_wiener(const TimeGrid& grid, std::uint64_t seed);

/// Paths seeded with derive_seed(master_seed, i), i = 0..count-1.
std::vector<WienerPath> simulate_wiener_ensemble(const TimeGrid& grid,
                                                 std::uint64_t master_seed,
                                                 std::size_t count);

/// Exact solution S_k = s0 exp(q t_k + sigma w_k).
SamplePath simulate_gbm(const GbmParams& params, const WienerPath& wiener);

/// Euler-Maruyama on the Wiener path's grid; returns a logprice-kind path.
SamplePath simulate_ito(const ItoParams& params, const WienerPath& wiener);

/// Pointwise natural log of a price path.
SamplePath log_path(const SamplePath& price);

}  // namespace logerg::stochastic
