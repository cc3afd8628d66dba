#pragma once

#include <optional>
#include <string>

#include "heat.hpp"

namespace logerg::pricing {

/// Full symbol set of the pricing engines.
struct PricingInputs {
  double r = 0.05;        ///< short rate
  double K = 50.0;        ///< strike
  double T = 1.0;         ///< horizon
  double beta = 2.0;      ///< inhibition degree
  double mu = 0.1;
  double sigma = 0.2;
  double tau = 0.5;       ///< time to maturity, tau = T - delta
  double z = 0.05;        ///< Z-process level
  double w_terminal = 1.0;  ///< W_T
  double s_t0 = 100.0;    ///< spot when the contract is bought
  double X = 100.0;       ///< underlying price in the ergodic Black-Scholes formula
  double t = 1.0;         ///< valuation time of the rotation pricer
};

struct DerivedCoefficients {
  double q = 0.0;       ///< mu - sigma^2/2
  double B = 0.0;       ///< q/delta^(beta-1) + sigma/delta^beta
  double eta = 0.0;     ///< B^2 T^(2 beta)
  double p = 0.0;       ///< r |z| tau T^beta
  double lambda = 0.0;  ///< T^beta B^2 / (r |z|)
  double y = 0.0;       ///< T^beta z - q (W_T - delta)
  double a = 0.0;       ///< 1/2 - r z / (B^2 T^beta)
  double b = 0.0;       ///< (4 r z T^beta - B^2 T^(2 beta))/8 - r^2 z^2/(2 B^2) - r
};

/// A closed-form price as evaluated, plus a flag when it came out negative.
/// Negative values are reported, never clipped.
struct PriceResult {
  double value = 0.0;
  bool negative = false;
};

/// gamma = ln(1 - K/S). Throws kDomain unless S > K > 0.
double gamma_delta(double spot, double strike);

/// e^{-r t} ((W_T/T^beta) ln(1 - K/S_t0) - K).
PriceResult price_rotation_call(const PricingInputs& in);

/// Evaluated with delta = T - tau frozen for the whole call.
DerivedCoefficients derive_coefficients(const PricingInputs& in);

/// e^{-r tau} exp{(y(lambda-2) + p(lambda-2)^2/4)/(2 lambda)} [|z| - ln K] N[d],
/// d = ln(X / ln K)/sqrt(2 p lambda). Requires K > 1 so that ln ln K exists.
PriceResult price_ergodic_bs(const PricingInputs& in);

/// Heat problem in y = T^beta z - q (W_T - delta): eta = B^2 T^(2 beta),
/// U(y, 0) = max(|z| - ln K, 0) e^{-a y}, integrated up to tau_end = tau.
struct HeatTransform {
  HeatProblem problem;
  DerivedCoefficients coefficients;
  double z_lower = 0.0;  ///< z-grid the y-grid was mapped from
  double z_spacing = 0.0;
  double t_pow_beta = 1.0;
  double shift = 0.0;  ///< q (W_T - delta), so y = T^beta z - shift

  double y_of_z(double z) const noexcept { return t_pow_beta * z - shift; }
  double z_of_y(double y) const noexcept { return (y + shift) / t_pow_beta; }
};

/// Maps the z-grid onto y and tabulates the initial data. The problem's
/// far_field is the exact heat flow of the payoff, for Dirichlet data.
HeatTransform transform_bsp_to_heat(const PricingInputs& in, const SpatialGrid& z_grid);

struct PdeOptions {
  double nodes_per_std = 200.0;  ///< y-spacing = sqrt(eta tau) / nodes_per_std
  double half_width_std = 12.0;  ///< domain half-width beyond the tilt, in std
};

/// Solves the heat problem by kernel convolution at the query node and maps
/// back with C = U e^{a y + b tau}; b carries the discounting.
double price_via_pde(const PricingInputs& in, const PdeOptions& options = {});

/// E[max(|Z| - k, 0)] for Z ~ N(mean, sd^2), k >= 0; sd = 0 gives the payoff.
double expected_abs_call(double mean, double sd, double k);

/// All engines at one input point, with per-engine domain errors captured.
struct PricingRecord {
  PricingInputs inputs;
  std::optional<PriceResult> rotation;
  std::string rotation_error;
  std::optional<PriceResult> ergodic_bs;
  std::string ergodic_bs_error;
  std::optional<double> pde;
  std::string pde_error;
  std::optional<DerivedCoefficients> coefficients;
  /// |ergodic_bs - pde| / |pde| when both engines ran.
  std::optional<double> relative_gap;
};

PricingRecord evaluate_all(const PricingInputs& in, const PdeOptions& options = {});

}  // namespace logerg::pricing
