#include "rotation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "numerics.hpp"
#include "pricing.hpp"

namespace logerg::rotation {

double reduce_unit(double v) noexcept {
  double r = v - std::floor(v);
  // v slightly below an integer can round up to exactly 1.
  if (r >= 1.0) r = 0.0;
  return r;
}

double rotate(double x, double theta) noexcept { return reduce_unit(x + theta); }

double orbit_point(double x, double theta, std::uint64_t k) noexcept {
  const double kd = static_cast<double>(k);
  const double p = kd * theta;
  const double e = std::fma(kd, theta, -p);  // k*theta = p + e exactly
  return reduce_unit(reduce_unit(p) + e + x);
}

std::vector<OrbitPoint> orbit(double x, double theta, std::size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "orbit: n must be >= 1");
  std::vector<OrbitPoint> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {k, orbit_point(x, theta, k)};
  return out;
}

TestFunction TestFunction::trig(double constant, std::vector<double> cos_coeffs,
                                std::vector<double> sin_coeffs) {
  TestFunction f;
  f.kind_ = Kind::kTrig;
  f.constant_ = constant;
  f.cos_ = std::move(cos_coeffs);
  f.sin_ = std::move(sin_coeffs);
  return f;
}

TestFunction TestFunction::tabulated(std::vector<double> samples) {
  if (samples.size() < 2) fail(ErrorCode::kInvalidArgument, "test function: need at least 2 samples");
  for (double s : samples) {
    if (!std::isfinite(s)) fail(ErrorCode::kInvalidArgument, "test function: non-finite sample");
  }
  if (std::abs(samples.front() - samples.back()) > 1e-12) {
    fail(ErrorCode::kInvalidArgument, "test function is not periodic: phi(0) != phi(1)");
  }
  TestFunction f;
  f.kind_ = Kind::kTabulated;
  f.samples_ = std::move(samples);
  return f;
}

TestFunction TestFunction::from_function(std::function<double(double)> fn) {
  if (!fn) fail(ErrorCode::kInvalidArgument, "test function: empty callable");
  const double f0 = fn(0.0);
  const double f1 = fn(1.0);
  if (!std::isfinite(f0) || !(std::abs(f0 - f1) <= 1e-12)) {
    fail(ErrorCode::kInvalidArgument, "test function is not periodic: phi(0) != phi(1)");
  }
  TestFunction f;
  f.kind_ = Kind::kCallable;
  f.fn_ = std::move(fn);
  return f;
}

double TestFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::kTrig: {
      double acc = constant_;
      const double w = 2.0 * kPi * x;
      for (std::size_t m = 0; m < cos_.size(); ++m) acc += cos_[m] * std::cos(w * static_cast<double>(m + 1));
      for (std::size_t m = 0; m < sin_.size(); ++m) acc += sin_[m] * std::sin(w * static_cast<double>(m + 1));
      return acc;
    }
    case Kind::kTabulated: {
      const double u = reduce_unit(x) * static_cast<double>(samples_.size() - 1);
      const auto j = std::min(static_cast<std::size_t>(u), samples_.size() - 2);
      const double f = u - static_cast<double>(j);
      return samples_[j] + f * (samples_[j + 1] - samples_[j]);
    }
    case Kind::kCallable:
      return fn_(x);
  }
  return 0.0;
}

double TestFunction::integral() const {
  switch (kind_) {
    case Kind::kTrig:
      return constant_;
    case Kind::kTabulated:
      return trapezoid(samples_, 1.0 / static_cast<double>(samples_.size() - 1));
    case Kind::kCallable: {
      constexpr std::size_t n = 1 << 14;
      std::vector<double> ys(n + 1);
      for (std::size_t j = 0; j <= n; ++j) ys[j] = fn_(static_cast<double>(j) / n);
      return trapezoid(ys, 1.0 / n);
    }
  }
  return 0.0;
}

double birkhoff_average(const TestFunction& phi, double x0, double theta, std::size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "birkhoff average: n must be >= 1");
  // Deviations from the first value: constants come out exact.
  const double first = phi(orbit_point(x0, theta, 0));
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) vals[k] = phi(orbit_point(x0, theta, k)) - first;
  return first + pairwise_sum(vals) / static_cast<double>(n);
}

namespace {

void require_interval(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "interval [" + std::to_string(a) + ", " +
                                          std::to_string(b) + ") must satisfy 0 <= a < b <= 1");
  }
}

}  // namespace

double equidistribution_test(double theta, double a, double b, double x0, std::size_t n) {
  require_interval(a, b);
  if (n == 0) fail(ErrorCode::kInvalidArgument, "equidistribution: n must be >= 1");
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = orbit_point(x0, theta, k);
    if (x >= a && x < b) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

KacResult kac_return_time(double theta, double a, double b, double x0, std::size_t n_returns,
                          std::uint64_t max_steps) {
  require_interval(a, b);
  if (n_returns == 0) fail(ErrorCode::kInvalidArgument, "kac: n_returns must be >= 1");
  if (!(x0 >= a && x0 < b)) fail(ErrorCode::kInvalidArgument, "kac: x0 must lie in the arc");
  if (max_steps == 0) {
    max_steps = static_cast<std::uint64_t>(std::ceil(100.0 * static_cast<double>(n_returns) / (b - a)));
  }
  KacResult res;
  std::uint64_t last = 0;
  std::uint64_t k = 0;
  while (res.returns < n_returns) {
    if (k >= max_steps) {
      fail(ErrorCode::kNumerical, "kac: no return within " + std::to_string(max_steps) +
                                      " steps (rational or degenerate angle?)");
    }
    ++k;
    const double x = orbit_point(x0, theta, k);
    if (x >= a && x < b) {
      ++res.returns;
      last = k;
    }
  }
  res.steps = last;
  res.mean = static_cast<double>(last) / static_cast<double>(res.returns);
  return res;
}

ThetaPath theta_process(const SamplePath& z, const SamplePath& price, double strike,
                        const ergodic::EmoConfig& cfg) {
  cfg.validate();
  require_same_grid(z.grid(), price.grid(), "theta process");
  const double scale = cfg.w_terminal / cfg.t_pow_beta();
  std::vector<double> gamma(z.size());
  std::vector<double> theta(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!(price[k] > strike)) {
      fail(ErrorCode::kDomain, "not exercisable at index " + std::to_string(k) + ": price " +
                                   std::to_string(price[k]) + " <= strike " + std::to_string(strike));
    }
    gamma[k] = pricing::gamma_delta(price[k], strike);
    theta[k] = z[k] + scale * gamma[k];
  }
  return {SamplePath(z.grid(), std::move(theta), PathKind::kTheta), std::move(gamma)};
}

MomentReport theta_moment_check(std::span<const ThetaPath> ensemble,
                                std::span<const double> anchors, std::size_t min_paths) {
  if (ensemble.size() < std::max<std::size_t>(min_paths, 1)) {
    fail(ErrorCode::kInvalidArgument, "theta moment check: need at least " +
                                          std::to_string(min_paths) + " paths, got " +
                                          std::to_string(ensemble.size()));
  }
  const double n = static_cast<double>(ensemble.size());
  MomentReport rep;
  rep.passed = true;
  std::vector<double> xs(ensemble.size());
  for (double t : anchors) {
    for (std::size_t i = 0; i < ensemble.size(); ++i) xs[i] = ensemble[i].theta.at_time(t);
    MomentEntry e;
    e.time = t;
    e.mean = pairwise_sum(xs) / n;
    if (ensemble.size() > 1) {
      std::vector<double> sq(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - e.mean) * (xs[i] - e.mean);
      e.variance = pairwise_sum(sq) / (n - 1.0);
    }
    e.std_error = std::sqrt(e.variance / n);
    e.mean_ok = std::abs(e.mean) <= 3.0 * e.std_error;
    rep.passed = rep.passed && e.mean_ok;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace logerg::rotation
