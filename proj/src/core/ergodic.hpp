#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grid.hpp"
#include "stochastic.hpp"

namespace logerg::ergodic {

/// Parameters of the ergodic-maker operator (EMO).
struct EmoConfig {
  double beta = 2.0;     ///< inhibition degree, must exceed 3/2
  double horizon = 1.0;  ///< T
  double w_terminal = 0.0;  ///< W_T

  void validate() const;
  double t_pow_beta() const;
};

/// Y = y0 + D + R with D the drift integral and R the martingale part.
struct DecomposedPath {
  TimeGrid grid;
  double y0 = 0.0;
  std::vector<double> drift_part;
  std::vector<double> mart_part;

  /// y0 + D + R, as a logprice path.
  SamplePath reconstruct() const;
};

/// D by trapezoidal quadrature of mu(t_k, Y_k); R is the residual, so the
/// reconstruction is exact up to one rounding per node.
DecomposedPath decompose(const SamplePath& log_path, const stochastic::ItoParams& params,
                         const stochastic::WienerPath& wiener);

/// Z_d = (W_T/T^beta) D_d + R_d / T^beta. The initial value y0 carries
/// coefficient 0 and never enters the computation.
SamplePath apply_emo(const DecomposedPath& dec, const EmoConfig& cfg);

/// Inverse EMO: c + (T^beta/W_T) D^z + T^beta R^z, where the split of z into
/// its drift and martingale components is taken from dec_shape.
SamplePath apply_iemo(const SamplePath& z, double c, const EmoConfig& cfg,
                      const DecomposedPath& dec_shape);

/// Closed form for a GBM: Z_d = [q d W_T + sigma W_d] / T^beta, T = grid horizon.
SamplePath construct_z_gbm(const stochastic::GbmParams& params,
                           const stochastic::WienerPath& wiener, double beta);

/// Decompose-then-EMO pipeline for a GBM price path; W_T is recovered from
/// the martingale part (R_T = sigma W_T).
struct PriceToZ {
  SamplePath z;
  DecomposedPath decomposition;
  EmoConfig config;
};
PriceToZ z_from_gbm_price(const stochastic::GbmParams& params, const SamplePath& price,
                          double beta);

enum class CovarianceMode {
  kPointwise,    ///< Cov(tau) = ensemble variance of X_tau
  kAnchoredLag,  ///< Cov(tau) = ensemble covariance of (X_a, X_{a+tau})
};

struct DiagnosticOptions {
  CovarianceMode mode = CovarianceMode::kPointwise;
  double anchor = 0.0;  ///< only used by kAnchoredLag
};

struct DiagnosticCurve {
  std::vector<double> horizons;
  std::vector<double> values;
};

/// (1/T') * integral_0^T' (1 - tau/T') Cov(tau) dtau for each horizon T'.
DiagnosticCurve ergodicity_diagnostic(std::span<const SamplePath> ensemble,
                                      std::span<const double> horizons,
                                      const DiagnosticOptions& options = {});

/// Mean-ergodicity curve of GBM-derived Z-processes. For each horizon T' the
/// ensemble is rebuilt with T = T' (the EMO depends on T), from Wiener paths
/// shared across horizons, and the diagnostic is evaluated at T'.
DiagnosticCurve z_ergodicity_curve(const stochastic::GbmParams& params, double beta,
                                   double dt, std::span<const double> horizons,
                                   std::size_t paths, std::uint64_t master_seed);

/// Restriction of a path to [0, horizon] (horizon must sit on a grid node).
SamplePath truncate(const SamplePath& path, double horizon);

}  // namespace logerg::ergodic
