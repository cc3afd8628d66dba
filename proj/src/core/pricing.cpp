#include "pricing.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "numerics.hpp"

namespace logerg::pricing {

double gamma_delta(double spot, double strike) {
  if (!(strike > 0.0)) fail(ErrorCode::kDomain, "gamma: strike must be positive");
  if (!(spot > strike)) {
    fail(ErrorCode::kDomain, "not exercisable: spot " + std::to_string(spot) +
                                 " <= strike " + std::to_string(strike));
  }
  return std::log1p(-strike / spot);
}

namespace {

void require_common(const PricingInputs& in) {
  if (!(in.T > 0.0)) fail(ErrorCode::kInvalidArgument, "pricing: T must be positive");
  if (!(in.beta > 1.5)) fail(ErrorCode::kInvalidArgument, "pricing: beta must exceed 3/2");
}

}  // namespace

PriceResult price_rotation_call(const PricingInputs& in) {
  require_common(in);
  if (!(in.t >= 0.0)) fail(ErrorCode::kInvalidArgument, "rotation pricer: t must be >= 0");
  const double gamma = gamma_delta(in.s_t0, in.K);
  const double angle = in.w_terminal / std::pow(in.T, in.beta) * gamma;
  const double value = std::exp(-in.r * in.t) * (angle - in.K);
  return {value, value < 0.0};
}

DerivedCoefficients derive_coefficients(const PricingInputs& in) {
  require_common(in);
  if (!(in.sigma > 0.0)) fail(ErrorCode::kInvalidArgument, "pricing: sigma must be positive");
  const double delta = in.T - in.tau;
  if (!(in.tau > 0.0) || !(delta > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "pricing: need 0 < tau < T, got tau=" +
                                          std::to_string(in.tau) + ", T=" + std::to_string(in.T));
  }
  if (in.z == 0.0) fail(ErrorCode::kSingular, "pricing: z = 0 makes lambda = T^beta B^2/(r|z|) singular");
  if (!(in.r > 0.0)) fail(ErrorCode::kSingular, "pricing: r must be positive (lambda has r|z| in the denominator)");

  DerivedCoefficients c;
  const double tb = std::pow(in.T, in.beta);
  c.q = in.mu - 0.5 * in.sigma * in.sigma;
  c.B = c.q / std::pow(delta, in.beta - 1.0) + in.sigma / std::pow(delta, in.beta);
  const double b2 = c.B * c.B;
  c.eta = b2 * tb * tb;
  c.p = in.r * std::abs(in.z) * in.tau * tb;
  c.lambda = tb * b2 / (in.r * std::abs(in.z));
  c.y = tb * in.z - c.q * (in.w_terminal - delta);
  c.a = 0.5 - in.r * in.z / (b2 * tb);
  c.b = (4.0 * in.r * in.z * tb - b2 * tb * tb) / 8.0 - in.r * in.r * in.z * in.z / (2.0 * b2) - in.r;
  if (!(c.eta > 0.0)) fail(ErrorCode::kSingular, "pricing: B = 0 gives a degenerate heat equation");
  return c;
}

PriceResult price_ergodic_bs(const PricingInputs& in) {
  if (!(in.K > 1.0)) {
    fail(ErrorCode::kDomain, "ergodic Black-Scholes: K must exceed 1 so that ln(ln K) exists, got " +
                                 std::to_string(in.K));
  }
  if (!(in.X > 0.0)) fail(ErrorCode::kDomain, "ergodic Black-Scholes: X must be positive");
  const DerivedCoefficients c = derive_coefficients(in);
  const double spread = 2.0 * c.p * c.lambda;
  if (!(spread > 0.0)) fail(ErrorCode::kSingular, "ergodic Black-Scholes: 2 p lambda must be positive");
  const double log_k = std::log(in.K);
  const double d = std::log(in.X / log_k) / std::sqrt(spread);
  const double lm2 = c.lambda - 2.0;
  const double exponent = (c.y * lm2 + 0.25 * c.p * lm2 * lm2) / (2.0 * c.lambda);
  const double value = std::exp(-in.r * in.tau) * std::exp(exponent) *
                       (std::abs(in.z) - log_k) * normal_cdf(d);
  return {value, value < 0.0};
}

double expected_abs_call(double mean, double sd, double k) {
  if (sd == 0.0) return std::max(std::abs(mean) - k, 0.0);
  const double up = (mean - k) / sd;
  const double down = (-mean - k) / sd;
  return (mean - k) * normal_cdf(up) + sd * normal_pdf(up) + (-mean - k) * normal_cdf(down) +
         sd * normal_pdf(down);
}

HeatTransform transform_bsp_to_heat(const PricingInputs& in, const SpatialGrid& z_grid) {
  if (!(in.K > 1.0)) {
    fail(ErrorCode::kDomain, "heat transform: K must exceed 1 (payoff uses ln K > 0)");
  }
  HeatTransform ht;
  ht.coefficients = derive_coefficients(in);
  const DerivedCoefficients& c = ht.coefficients;
  ht.t_pow_beta = std::pow(in.T, in.beta);
  ht.shift = c.q * (in.w_terminal - (in.T - in.tau));
  ht.z_lower = z_grid.lower;
  ht.z_spacing = z_grid.spacing;

  HeatProblem& hp = ht.problem;
  hp.eta = c.eta;
  hp.tau_end = in.tau;
  hp.grid = SpatialGrid{ht.y_of_z(z_grid.lower), ht.t_pow_beta * z_grid.spacing, z_grid.count};
  const double log_k = std::log(in.K);
  hp.initial.resize(hp.grid.count);
  for (std::size_t j = 0; j < hp.grid.count; ++j) {
    const double z = z_grid.at(j);
    const double payoff = std::max(std::abs(z) - log_k, 0.0);
    hp.initial[j] = payoff == 0.0 ? 0.0 : payoff * std::exp(-c.a * ht.y_of_z(z));
  }
  // Exact flow of the payoff: with v = eta tau,
  // U(y, tau) = e^{-a y + a^2 v/2} E[max(|z(Y')| - ln K, 0)], Y' ~ N(y - a v, v).
  const double a = c.a;
  const double eta = c.eta;
  const double tb = ht.t_pow_beta;
  const double shift = ht.shift;
  hp.far_field = [a, eta, tb, shift, log_k](double y, double tau) {
    const double v = eta * tau;
    const double mean_z = (y - a * v + shift) / tb;
    const double sd_z = std::sqrt(v) / tb;
    return std::exp(-a * y + 0.5 * a * a * v) * expected_abs_call(mean_z, sd_z, log_k);
  };
  return ht;
}

double price_via_pde(const PricingInputs& in, const PdeOptions& options) {
  const DerivedCoefficients c = derive_coefficients(in);
  const double sd = std::sqrt(c.eta * in.tau);
  const double h = sd / options.nodes_per_std;
  const double half_width = options.half_width_std * sd + std::abs(c.a) * c.eta * in.tau;
  const auto half = static_cast<std::size_t>(std::ceil(half_width / h));
  const double tb = std::pow(in.T, in.beta);
  const SpatialGrid z_grid = SpatialGrid::centered(in.z, h / tb, half);
  const HeatTransform ht = transform_bsp_to_heat(in, z_grid);
  const double u = solve_heat_convolution_at(ht.problem, half);
  const double y = ht.problem.grid.at(half);
  return u * std::exp(c.a * y + c.b * in.tau);
}

PricingRecord evaluate_all(const PricingInputs& in, const PdeOptions& options) {
  PricingRecord rec;
  rec.inputs = in;
  try {
    rec.rotation = price_rotation_call(in);
  } catch (const Error& e) {
    rec.rotation_error = e.what();
  }
  try {
    rec.coefficients = derive_coefficients(in);
  } catch (const Error&) {
  }
  try {
    rec.ergodic_bs = price_ergodic_bs(in);
  } catch (const Error& e) {
    rec.ergodic_bs_error = e.what();
  }
  try {
    rec.pde = price_via_pde(in, options);
  } catch (const Error& e) {
    rec.pde_error = e.what();
  }
  if (rec.ergodic_bs && rec.pde) {
    rec.relative_gap = std::abs(rec.ergodic_bs->value - *rec.pde) / std::abs(*rec.pde);
  }
  return rec;
}

}  // namespace logerg::pricing
