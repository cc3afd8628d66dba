#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ergodic.hpp"
#include "error.hpp"
#include "random.hpp"
#include "stochastic.hpp"

using namespace logerg;
using namespace logerg::ergodic;
using namespace logerg::stochastic;

namespace {

// Grid T=1, dt=0.5 with W(0.5) = -0.1, W(1) = 0.3.
WienerPath fixture_wiener() {
  return WienerPath(SamplePath(TimeGrid::uniform(1.0, 0.5), {0.0, -0.1, 0.3}, PathKind::kWiener), 0);
}

}  // namespace

TEST(Emo, ConfigValidation) {
  EXPECT_THROW((EmoConfig{1.5, 1.0, 0.3}.validate()), Error);
  EXPECT_THROW((EmoConfig{2.0, 0.0, 0.3}.validate()), Error);
  EXPECT_NO_THROW((EmoConfig{1.51, 1.0, 0.3}.validate()));
}

TEST(Emo, GbmHandExample) {
  const GbmParams p{0.1, 0.2, 100.0};
  const auto w = fixture_wiener();
  const auto z = construct_z_gbm(p, w, 2.0);
  EXPECT_EQ(z[0], 0.0);
  EXPECT_NEAR(z[1], -0.008, 1e-15);

  const auto y = log_path(simulate_gbm(p, w));
  const auto dec = decompose(y, ItoParams::log_gbm(p), w);
  const auto z2 = apply_emo(dec, {2.0, 1.0, 0.3});
  EXPECT_NEAR(z2[1], -0.008, 1e-15);
}

TEST(Emo, ConstantPathGivesZero) {
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 0.01), 4);
  const SamplePath y(w.grid(), std::vector<double>(w.path().size(), 3.7), PathKind::kLogPrice);
  const auto dec = decompose(y, ItoParams::constant(0.0, 0.0, 3.7), w);
  const auto z = apply_emo(dec, {2.0, 1.0, w.terminal()});
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
}

TEST(Decompose, DriftlessPutsEverythingInMartingale) {
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 0.01), 5);
  const auto y = simulate_ito(ItoParams::constant(0.0, 0.3, 1.0), w);
  const auto dec = decompose(y, ItoParams::constant(0.0, 0.3, 1.0), w);
  for (std::size_t k = 0; k < y.size(); ++k) {
    EXPECT_EQ(dec.drift_part[k], 0.0);
    EXPECT_NEAR(dec.mart_part[k], y[k] - 1.0, 1e-15);
  }
}

TEST(Decompose, NoiselessHasZeroMartingale) {
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 0.01), 5);
  const auto y = simulate_ito(ItoParams::constant(0.7, 0.0, 0.0), w);
  const auto dec = decompose(y, ItoParams::constant(0.7, 0.0, 0.0), w);
  for (double r : dec.mart_part) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(Decompose, GbmParts) {
  const GbmParams p{0.1, 0.2, 100.0};
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 1e-3), 6);
  const auto dec = decompose(log_path(simulate_gbm(p, w)), ItoParams::log_gbm(p), w);
  EXPECT_EQ(dec.drift_part[0], 0.0);
  EXPECT_EQ(dec.mart_part[0], 0.0);
  for (std::size_t k = 0; k < w.path().size(); ++k) {
    EXPECT_NEAR(dec.drift_part[k], 0.08 * w.grid().time(k), 1e-12);
    EXPECT_NEAR(dec.mart_part[k], 0.2 * w[k], 1e-10);
  }
}

TEST(Decompose, GridMismatch) {
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 0.01), 5);
  const auto y = simulate_ito(ItoParams::constant(0.0, 0.3, 1.0), simulate_wiener(TimeGrid::uniform(1.0, 0.02), 5));
  try {
    decompose(y, ItoParams::constant(0.0, 0.3, 1.0), w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridMismatch);
  }
}

TEST(Iemo, RoundTripAndOffsets) {
  const GbmParams p{0.1, 0.2, 100.0};
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 1e-3), 9);
  const auto y = log_path(simulate_gbm(p, w));
  const auto dec = decompose(y, ItoParams::log_gbm(p), w);
  const EmoConfig cfg{2.0, 1.0, w.terminal()};
  const auto z = apply_emo(dec, cfg);
  const auto back = apply_iemo(z, std::log(100.0), cfg, dec);
  const auto shifted = apply_iemo(z, std::log(100.0) + 2.5, cfg, dec);
  for (std::size_t k = 0; k < y.size(); ++k) {
    EXPECT_NEAR(back[k], y[k], 1e-10);
    EXPECT_NEAR(shifted[k] - back[k], 2.5, 1e-12);
  }
  EXPECT_THROW(apply_iemo(z, 0.0, {2.0, 1.0, 0.0}, dec), Error);
}

TEST(Emo, Linearity) {
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 1e-3), 12);
  const auto yp = simulate_ito(ItoParams::constant(0.05, 0.3, 0.4), w);
  const auto yq = simulate_ito(ItoParams::constant(-0.2, 0.1, 1.1), w);
  const auto dp = decompose(yp, ItoParams::constant(0.05, 0.3, 0.4), w);
  const auto dq = decompose(yq, ItoParams::constant(-0.2, 0.1, 1.1), w);
  const double a = 1.7;
  const double b = -0.6;
  DecomposedPath mix = dp;
  mix.y0 = a * dp.y0 + b * dq.y0;
  for (std::size_t k = 0; k < mix.drift_part.size(); ++k) {
    mix.drift_part[k] = a * dp.drift_part[k] + b * dq.drift_part[k];
    mix.mart_part[k] = a * dp.mart_part[k] + b * dq.mart_part[k];
  }
  const EmoConfig cfg{2.5, 1.0, w.terminal()};
  const auto zp = apply_emo(dp, cfg);
  const auto zq = apply_emo(dq, cfg);
  const auto zm = apply_emo(mix, cfg);
  for (std::size_t k = 0; k < zm.size(); ++k) EXPECT_NEAR(zm[k], a * zp[k] + b * zq[k], 1e-12);
}

TEST(Emo, InitialValueAnnihilatedBitwise) {
  const auto w = simulate_wiener(TimeGrid::uniform(1.0, 1e-3), 13);
  const auto params = ItoParams::constant(0.1, 0.25, 0.0);
  const auto dec = decompose(simulate_ito(params, w), params, w);
  const EmoConfig cfg{2.0, 1.0, w.terminal()};
  const auto base = apply_emo(dec, cfg);
  for (double shift : {-4.25, 1e8, 0.1}) {
    auto moved = dec;
    moved.y0 += shift;
    const auto z = apply_emo(moved, cfg);
    for (std::size_t k = 0; k < z.size(); ++k) ASSERT_EQ(z[k], base[k]);
  }
  // A GBM spot only moves y0 = ln s0.
  const auto za = construct_z_gbm({0.1, 0.2, 100.0}, w, 2.0);
  const auto zb = construct_z_gbm({0.1, 0.2, 3.0}, w, 2.0);
  for (std::size_t k = 0; k < za.size(); ++k) ASSERT_EQ(za[k], zb[k]);
}

TEST(Emo, ClosedFormMatchesPipeline) {
  const GbmParams p{0.1, 0.2, 100.0};
  const auto ens = simulate_wiener_ensemble(TimeGrid::uniform(1.0, 1e-3), 21, 100);
  double worst = 0.0;
  for (const auto& w : ens) {
    const auto closed = construct_z_gbm(p, w, 2.0);
    const auto piped = z_from_gbm_price(p, simulate_gbm(p, w), 2.0);
    EXPECT_NEAR(piped.config.w_terminal, w.terminal(), 1e-12);
    for (std::size_t k = 0; k < closed.size(); ++k) worst = std::max(worst, std::abs(closed[k] - piped.z[k]));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Diagnostic, ZeroEnsemble) {
  const auto g = TimeGrid::uniform(1.0, 0.1);
  std::vector<SamplePath> ens(5, SamplePath(g, std::vector<double>(11, 0.0), PathKind::kLogPrice));
  const std::vector<double> hs{0.5, 1.0};
  const auto c = ergodicity_diagnostic(ens, hs);
  ASSERT_EQ(c.values.size(), 2u);
  for (double v : c.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(ergodicity_diagnostic(std::span(ens).first(1), hs), Error);
}

TEST(Diagnostic, ZDecaysWhileLogPriceGrows) {
  const GbmParams p{0.1, 0.2, 100.0};
  const std::vector<double> hs{1.0, 10.0, 100.0};
  const auto zc = z_ergodicity_curve(p, 2.0, 0.05, hs, 1000, 314);
  EXPECT_GT(zc.values[0], zc.values[1]);
  EXPECT_GT(zc.values[1], zc.values[2]);
  EXPECT_LE(std::abs(zc.values[2]), 1e-3);

  const auto ws = simulate_wiener_ensemble(TimeGrid::uniform(100.0, 0.05), 314, 1000);
  std::vector<SamplePath> logs;
  for (const auto& w : ws) logs.push_back(log_path(simulate_gbm(p, w)));
  const auto yc = ergodicity_diagnostic(logs, hs);
  EXPECT_LT(yc.values[0], yc.values[1]);
  EXPECT_LT(yc.values[1], yc.values[2]);
  EXPECT_GT(yc.values[2], 100.0 * std::abs(zc.values[2]));
}

TEST(Truncate, KeepsPrefix) {
  const auto w = simulate_wiener(TimeGrid::uniform(2.0, 0.5), 1);
  const auto t = truncate(w.path(), 1.0);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.back(), w[2]);
  EXPECT_THROW(truncate(w.path(), 0.75), Error);
}
