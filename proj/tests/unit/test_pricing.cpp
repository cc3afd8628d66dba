#include <gtest/gtest.h>

#include <cmath>

#include "error.hpp"
#include "numerics.hpp"
#include "pricing.hpp"

using namespace logerg;
using namespace logerg::pricing;

// Reference values below come from tests/oracles/pricing_oracle.py (50-digit
// evaluation, independent of this code).

namespace {

PricingInputs example() {
  PricingInputs in;
  in.r = 0.05;
  in.K = std::exp(std::exp(1.0));
  in.T = 1.0;
  in.beta = 2.0;
  in.mu = 0.1;
  in.sigma = 0.2;
  in.tau = 0.5;
  in.z = 0.05;
  in.w_terminal = 0.3;
  in.X = 100.0;
  return in;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST(GammaDelta, Examples) {
  EXPECT_NEAR(gamma_delta(100.0, 1e-300), 0.0, 1e-300);
  EXPECT_NEAR(gamma_delta(100.0, 50.0), -0.69314718055994530942, 1e-15);
  EXPECT_EQ(code_of([] { gamma_delta(50.0, 50.0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { gamma_delta(50.0, 0.0); }), ErrorCode::kDomain);
}

TEST(RotationPrice, Examples) {
  PricingInputs in;
  in.r = 0.05;
  in.t = 1.0;
  in.w_terminal = 1.0;
  in.T = 1.0;
  in.beta = 2.0;
  in.s_t0 = 100.0;
  in.K = 50.0;
  const auto c = price_rotation_call(in);
  EXPECT_NEAR(c.value, -48.220813218694029732, 1e-12);
  EXPECT_TRUE(c.negative);

  in.w_terminal = 0.0;
  EXPECT_EQ(price_rotation_call(in).value, -std::exp(-0.05) * 50.0);

  in.w_terminal = 1.0;
  in.K = 1e-300;
  EXPECT_NEAR(price_rotation_call(in).value, 0.0, 1e-290);

  in.K = 100.0;
  EXPECT_EQ(code_of([&] { price_rotation_call(in); }), ErrorCode::kDomain);
  in.K = 50.0;
  in.t = -1.0;
  EXPECT_NE(code_of([&] { price_rotation_call(in); }), ErrorCode{});
}

TEST(RotationPrice, LinearInTerminalWienerAndDecreasingInStrike) {
  PricingInputs in;
  auto at = [&](double wt, double k) {
    in.w_terminal = wt;
    in.K = k;
    return price_rotation_call(in).value;
  };
  EXPECT_NEAR(at(2.0, 40.0) - at(1.0, 40.0), at(1.0, 40.0) - at(0.0, 40.0), 1e-12);
  double prev = at(1.0, 1.0);
  for (double k = 5.0; k < 100.0; k += 5.0) {
    const double c = at(1.0, k);
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(Coefficients, OracleValues) {
  const auto c = derive_coefficients(example());
  EXPECT_NEAR(c.q, 0.08, 1e-16);
  EXPECT_NEAR(c.B, 0.96, 1e-15);
  EXPECT_NEAR(c.eta, 0.9216, 1e-15);
  EXPECT_NEAR(c.p, 0.00125, 1e-18);
  EXPECT_NEAR(c.lambda, 368.64, 1e-10);
  EXPECT_NEAR(c.y, 0.066, 1e-15);
  EXPECT_NEAR(c.a, 0.49728732638888888889, 1e-15);
  EXPECT_NEAR(c.b, -0.16395339084201388889, 1e-15);
}

TEST(Coefficients, Identities) {
  for (double tau : {0.25, 0.5, 0.75}) {
    for (double z : {-3.5, 0.05, 1.5}) {
      auto in = example();
      in.tau = tau;
      in.z = z;
      const auto c = derive_coefficients(in);
      const double tb = std::pow(in.T, in.beta);
      EXPECT_NEAR(c.lambda * in.r * std::abs(z) / (tb * c.B * c.B), 1.0, 1e-12);
      // p*lambda = tau B^2 T^(2 beta), so 2 p lambda carries a factor 2.
      EXPECT_NEAR(2.0 * c.p * c.lambda / (2.0 * tau * c.B * c.B * tb * tb), 1.0, 1e-12);
    }
  }
}

TEST(Coefficients, Errors) {
  auto in = example();
  in.z = 0.0;
  EXPECT_EQ(code_of([&] { derive_coefficients(in); }), ErrorCode::kSingular);
  in = example();
  in.r = 0.0;
  EXPECT_EQ(code_of([&] { derive_coefficients(in); }), ErrorCode::kSingular);
  in = example();
  in.tau = 1.0;
  EXPECT_EQ(code_of([&] { derive_coefficients(in); }), ErrorCode::kInvalidArgument);
  in.tau = 0.0;
  EXPECT_EQ(code_of([&] { derive_coefficients(in); }), ErrorCode::kInvalidArgument);
}

TEST(ErgodicBs, OracleValue) {
  const auto c = price_ergodic_bs(example());
  EXPECT_NEAR(c.value, -2.8466585651151706862, 1e-12);
  EXPECT_TRUE(c.negative);
}

TEST(ErgodicBs, ZeroPayoffFactor) {
  auto in = example();
  in.z = std::exp(1.0);
  EXPECT_EQ(price_ergodic_bs(in).value, 0.0);
  EXPECT_FALSE(price_ergodic_bs(in).negative);
}

TEST(ErgodicBs, MonotoneInX) {
  auto in = example();
  in.z = 3.5;
  double prev = -1.0;
  for (double x : {1.0, 2.0, 2.8, 3.0, 5.0, 20.0}) {
    in.X = x;
    const double c = price_ergodic_bs(in).value;
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(ErgodicBs, DomainErrors) {
  auto in = example();
  in.K = 0.5;
  EXPECT_EQ(code_of([&] { price_ergodic_bs(in); }), ErrorCode::kDomain);
  in.K = 1.0;
  EXPECT_EQ(code_of([&] { price_ergodic_bs(in); }), ErrorCode::kDomain);
  in = example();
  in.X = 0.0;
  EXPECT_NE(code_of([&] { price_ergodic_bs(in); }), ErrorCode{});
  in = example();
  in.z = 0.0;
  EXPECT_EQ(code_of([&] { price_ergodic_bs(in); }), ErrorCode::kSingular);
}

TEST(HeatTransform, PayoffZeroAndAffineInverse) {
  auto in = example();
  const double lnk = std::exp(1.0);
  const SpatialGrid zg{-4.0, 0.01, 801};
  const auto ht = transform_bsp_to_heat(in, zg);
  EXPECT_NEAR(ht.problem.eta, 0.9216, 1e-15);
  EXPECT_EQ(ht.problem.tau_end, 0.5);
  double worst = 0.0;
  for (std::size_t j = 0; j < zg.count; ++j) {
    const double z = zg.at(j);
    worst = std::max(worst, std::abs(ht.z_of_y(ht.y_of_z(z)) - z));
    EXPECT_NEAR(ht.problem.grid.at(j), ht.y_of_z(z), 1e-12);
    if (std::abs(z) <= lnk) EXPECT_EQ(ht.problem.initial[j], 0.0);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(HeatTransform, RawPayoffWhenTiltVanishes) {
  auto in = example();
  // a = 0 when r z = B^2 T^beta / 2.
  in.z = 0.9216 / 2.0 / in.r;
  const SpatialGrid zg{8.0, 0.5, 5};
  const auto ht = transform_bsp_to_heat(in, zg);
  EXPECT_NEAR(ht.coefficients.a, 0.0, 1e-15);
  for (std::size_t j = 0; j < zg.count; ++j) {
    EXPECT_NEAR(ht.problem.initial[j], std::max(std::abs(zg.at(j)) - std::exp(1.0), 0.0), 1e-12);
  }
}

TEST(Pde, MatchesGaussianExpectationOracle) {
  struct Case {
    double tau, z, value;
  } cases[] = {{0.5, 0.05, 0.000015884085627986303171},
               {0.5, 3.0, 0.33028415251817582639},
               {0.25, -3.5, 0.84159470153500405891}};
  for (const auto& c : cases) {
    auto in = example();
    in.tau = c.tau;
    in.z = c.z;
    EXPECT_NEAR(price_via_pde(in) / c.value, 1.0, 1e-4) << c.tau << ' ' << c.z;
  }
}

TEST(Pde, SecondOrderInSpacing) {
  auto in = example();
  in.z = 3.0;
  const double exact = 0.33028415251817582639;
  PdeOptions coarse;
  coarse.nodes_per_std = 4.0;
  PdeOptions fine;
  fine.nodes_per_std = 8.0;
  const double ec = std::abs(price_via_pde(in, coarse) - exact);
  const double ef = std::abs(price_via_pde(in, fine) - exact);
  EXPECT_LT(ef, ec);
  EXPECT_GT(ec / ef, 3.0);
}

TEST(Pde, NearZeroWhenPayoffVanishesLocally) {
  auto in = example();
  in.z = 0.0;
  EXPECT_THROW(price_via_pde(in), Error);
  in.z = 1e-6;
  EXPECT_LT(std::abs(price_via_pde(in)), 1e-4);
}

TEST(ExpectedAbsCall, Limits) {
  EXPECT_EQ(expected_abs_call(3.0, 0.0, 1.0), 2.0);
  EXPECT_EQ(expected_abs_call(-0.5, 0.0, 1.0), 0.0);
  EXPECT_NEAR(expected_abs_call(0.0, 1.0, 0.0), std::sqrt(2.0 / kPi), 1e-15);
}

TEST(EvaluateAll, RecordsPerEngineErrors) {
  auto in = example();
  in.K = 0.5;
  const auto rec = evaluate_all(in);
  EXPECT_TRUE(rec.rotation.has_value());
  EXPECT_FALSE(rec.ergodic_bs.has_value());
  EXPECT_FALSE(rec.ergodic_bs_error.empty());
  EXPECT_FALSE(rec.relative_gap.has_value());

  const auto ok = evaluate_all(example());
  ASSERT_TRUE(ok.relative_gap.has_value());
  EXPECT_TRUE(ok.coefficients.has_value());
}
