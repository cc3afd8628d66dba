#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ergodic.hpp"
#include "error.hpp"
#include "numerics.hpp"
#include "random.hpp"
#include "rotation.hpp"
#include "stochastic.hpp"

using namespace logerg;
using namespace logerg::rotation;

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);
}  // namespace

TEST(Rotate, Examples) {
  EXPECT_EQ(rotate(0.25, 0.5), 0.75);
  EXPECT_EQ(rotate(0.3, 0.0), 0.3);
  EXPECT_NEAR(rotate(0.9, kSqrt2 - 1.0), 0.9 + kSqrt2 - 2.0, 1e-12);
  EXPECT_EQ(rotate(0.5, 0.5), 0.0);
  EXPECT_EQ(reduce_unit(1.0), 0.0);
  EXPECT_EQ(reduce_unit(-0.25), 0.75);
}

TEST(Rotate, StaysInUnitInterval) {
  double x = 0.0;
  for (int k = 0; k < 100000; ++k) {
    x = rotate(x, kGolden);
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  EXPECT_LT(rotate(std::nextafter(1.0, 0.0), 1e-17), 1.0);
}

TEST(Rotate, CompositionMatchesMultiple) {
  double x = 0.123;
  double worst = 0.0;
  for (std::uint64_t k = 1; k <= 1000000; ++k) {
    x = rotate(x, kSqrt2);
    if (k % 1000 == 0) {
      double d = std::abs(x - orbit_point(0.123, kSqrt2, k));
      worst = std::max(worst, std::min(d, 1.0 - d));
    }
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Orbit, RationalFixture) {
  const auto o = orbit(0.0, 0.5, 4);
  ASSERT_EQ(o.size(), 4u);
  const double expect[] = {0.0, 0.5, 0.0, 0.5};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(o[k].x, expect[k]);
    EXPECT_EQ(o[k].step, k);
  }
  // Same angle after a full turn, different step.
  EXPECT_EQ(o[0].x, o[2].x);
  EXPECT_NE(o[0].step, o[2].step);
}

TEST(Orbit, IncrementsAreTheta) {
  const double theta = kSqrt2 - 1.0;
  const auto o = orbit(0.37, theta, 100000);
  for (std::size_t k = 1; k < o.size(); ++k) {
    const double inc = reduce_unit(o[k].x - o[k - 1].x);
    ASSERT_NEAR(std::min(std::abs(inc - theta), 1.0 - std::abs(inc - theta)), 0.0, 1e-9);
  }
}

TEST(Orbit, GroupProperty) {
  const auto a = orbit(0.2, kGolden, 50);
  const auto b = orbit(a[30].x, kGolden, 20);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_NEAR(b[k].x, a[30 + k].x, 1e-12);
}

TEST(Orbit, DenseAtMillibinScale) {
  const auto o = orbit(0.0, kSqrt2, 100000);
  std::vector<bool> hit(1000, false);
  for (const auto& p : o) hit[static_cast<std::size_t>(p.x * 1000.0)] = true;
  for (std::size_t b = 0; b < hit.size(); ++b) EXPECT_TRUE(hit[b]) << "bin " << b;
}

TEST(TestFunctionTest, Kinds) {
  const auto c = TestFunction::trig(0.37, {}, {});
  EXPECT_EQ(c(0.8), 0.37);
  EXPECT_EQ(c.integral(), 0.37);
  const auto s = TestFunction::trig(0.0, {}, {1.0});
  EXPECT_NEAR(s(0.25), 1.0, 1e-15);
  const auto t = TestFunction::tabulated({0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(t(0.25), 0.5);
  EXPECT_DOUBLE_EQ(t.integral(), 0.5);
  EXPECT_THROW(TestFunction::tabulated({0.0, 1.0}), Error);
  EXPECT_THROW(TestFunction::from_function([](double x) { return x; }), Error);
  const auto f = TestFunction::from_function([](double x) { return x * (1.0 - x); });
  EXPECT_NEAR(f.integral(), 1.0 / 6.0, 1e-6);
}

TEST(Birkhoff, ConstantIsExact) {
  EXPECT_EQ(birkhoff_average(TestFunction::trig(0.37, {}, {}), 0.1, kSqrt2, 1000), 0.37);
}

TEST(Birkhoff, SineAveragesToZero) {
  EXPECT_LE(std::abs(birkhoff_average(TestFunction::trig(0.0, {}, {1.0}), 0.0, kSqrt2, 1000000)), 1e-3);
}

TEST(Birkhoff, TrigPolynomial) {
  const auto phi = TestFunction::trig(0.37, {0.5, -0.25, 0.1}, {0.3, 0.2});
  EXPECT_NEAR(birkhoff_average(phi, 0.0, kSqrt2, 1000000), 0.37, 1e-3);
}

TEST(Birkhoff, Tabulated) {
  const auto phi = TestFunction::tabulated({0.2, 0.9, 0.4, 0.2});
  EXPECT_NEAR(birkhoff_average(phi, 0.0, kGolden, 1000000), phi.integral(), 1e-3);
}

TEST(Equidistribution, Examples) {
  EXPECT_EQ(equidistribution_test(kSqrt2, 0.0, 1.0, 0.0, 17), 1.0);
  EXPECT_NEAR(equidistribution_test(kSqrt2, 0.2, 0.5, 0.0, 1000000), 0.3, 0.005);
  EXPECT_EQ(equidistribution_test(0.5, 0.1, 0.4, 0.0, 1000), 0.0);
  EXPECT_THROW(equidistribution_test(kSqrt2, 0.5, 0.5, 0.0, 10), Error);
  EXPECT_THROW(equidistribution_test(kSqrt2, -0.1, 0.5, 0.0, 10), Error);
}

TEST(Kac, WholeCircle) {
  const auto r = kac_return_time(kSqrt2, 0.0, 1.0, 0.0, 1000);
  EXPECT_EQ(r.mean, 1.0);
  EXPECT_EQ(r.returns, 1000u);
}

TEST(Kac, ArcLengths) {
  for (double p : {0.1, 0.25, 0.5}) {
    const auto r = kac_return_time(kGolden, 0.0, p, 0.0, 100000);
    EXPECT_NEAR(r.mean * p, 1.0, 0.02) << "p=" << p;
  }
}

TEST(Kac, Errors) {
  EXPECT_THROW(kac_return_time(kGolden, 0.0, 0.25, 0.0, 0), Error);
  EXPECT_THROW(kac_return_time(kGolden, 0.0, 0.25, 0.5, 10), Error);
  try {
    kac_return_time(kGolden, 0.0, 1e-6, 0.0, 10, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumerical);
  }
}

namespace {

SamplePath flat(double v, PathKind kind, std::size_t n = 5) {
  return SamplePath(TimeGrid::uniform(1.0, 1.0 / static_cast<double>(n - 1)), std::vector<double>(n, v), kind);
}

}  // namespace

TEST(Theta, HandExample) {
  const auto th = theta_process(flat(0.0, PathKind::kZProcess), flat(100.0, PathKind::kPrice), 50.0, {2.0, 1.0, 1.0});
  for (double v : th.theta.values()) EXPECT_NEAR(v, std::log(0.5), 1e-15);
  EXPECT_EQ(th.theta.kind(), PathKind::kTheta);
}

TEST(Theta, TinyStrikeGivesZ) {
  const auto w = stochastic::simulate_wiener(TimeGrid::uniform(1.0, 1e-2), 3);
  const stochastic::GbmParams p{0.1, 0.2, 100.0};
  const auto z = ergodic::construct_z_gbm(p, w, 2.0);
  const auto th = theta_process(z, stochastic::simulate_gbm(p, w), 1e-300, {2.0, 1.0, w.terminal()});
  for (std::size_t k = 0; k < z.size(); ++k) EXPECT_NEAR(th.theta[k], z[k], 1e-15);
}

TEST(Theta, NotExercisable) {
  const auto g = TimeGrid::uniform(1.0, 0.5);
  try {
    theta_process(flat(0.0, PathKind::kZProcess, 3), SamplePath(g, {60.0, 50.0, 70.0}, PathKind::kPrice), 50.0,
                  {2.0, 1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos) << e.what();
  }
}

namespace {

// Antithetic pairs (W, -W) around one shared price path: theta is odd in W
// once the price is held fixed, so the ensemble mean is zero by symmetry.
std::vector<ThetaPath> antithetic_ensemble(std::size_t pairs, double shift) {
  const stochastic::GbmParams p{0.1, 0.2, 100.0};
  const auto grid = TimeGrid::uniform(1.0, 1e-2);
  const auto price = stochastic::simulate_gbm(p, stochastic::simulate_wiener(grid, 999));
  std::vector<ThetaPath> out;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto w = stochastic::simulate_wiener(grid, derive_seed(4242, i));
    std::vector<double> neg(w.path().size());
    for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -w[k];
    const stochastic::WienerPath wn(SamplePath(grid, neg, PathKind::kWiener), 0);
    for (const auto* wp : {&w, &wn}) {
      auto z = ergodic::construct_z_gbm(p, *wp, 2.0);
      auto th = theta_process(z, price, 50.0, {2.0, 1.0, wp->terminal()});
      if (shift != 0.0) {
        std::vector<double> v(th.theta.values().begin(), th.theta.values().end());
        for (double& x : v) x += shift;
        th.theta = SamplePath(grid, v, PathKind::kTheta);
      }
      out.push_back(std::move(th));
    }
  }
  return out;
}

}  // namespace

TEST(ThetaMoments, SymmetricEnsembleIsCentred) {
  const auto ens = antithetic_ensemble(100, 0.0);
  const std::vector<double> anchors{0.25, 0.5, 0.75, 1.0};
  const auto rep = theta_moment_check(ens, anchors);
  EXPECT_TRUE(rep.passed);
  ASSERT_EQ(rep.entries.size(), 4u);
  for (const auto& e : rep.entries) {
    EXPECT_TRUE(e.mean_ok);
    EXPECT_GT(e.variance, 0.0);
  }
}

TEST(ThetaMoments, ShiftedEnsembleFails) {
  const auto ens = antithetic_ensemble(100, 0.5);
  const std::vector<double> anchors{0.25, 0.5, 0.75, 1.0};
  EXPECT_FALSE(theta_moment_check(ens, anchors).passed);
}

TEST(ThetaMoments, SingleConstantPath) {
  std::vector<ThetaPath> one{{flat(0.3, PathKind::kTheta), std::vector<double>(5, 0.0)}};
  const std::vector<double> anchors{0.5};
  const auto rep = theta_moment_check(one, anchors, 1);
  EXPECT_EQ(rep.entries[0].variance, 0.0);
  EXPECT_THROW(theta_moment_check(one, anchors), Error);
}
