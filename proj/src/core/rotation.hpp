#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ergodic.hpp"
#include "grid.hpp"

namespace logerg::rotation {

/// (x + theta) mod 1, reduced into [0, 1).
double rotate(double x, double theta) noexcept;

/// Reduction of any finite real into [0, 1).
double reduce_unit(double v) noexcept;

/// (x + k theta) mod 1 from the product k*theta, split exactly with an FMA
/// so the reduction does not lose the low bits for large k.
double orbit_point(double x, double theta, std::uint64_t k) noexcept;

/// Reduced coordinate plus the step that produced it: angles 0 and 2k*pi
/// are kept apart.
struct OrbitPoint {
  std::uint64_t step = 0;
  double x = 0.0;
};

std::vector<OrbitPoint> orbit(double x, double theta, std::size_t n);

/// Continuous periodic observable on the circle.
class TestFunction {
 public:
  /// c + sum_m a_m cos(2 pi m x) + b_m sin(2 pi m x), m = 1..
  static TestFunction trig(double constant, std::vector<double> cos_coeffs,
                           std::vector<double> sin_coeffs);
  /// Samples at x_j = j/(n-1), j = 0..n-1, linear in between. The first and
  /// last samples must agree to 1e-12.
  static TestFunction tabulated(std::vector<double> samples);
  /// Arbitrary callable; rejected unless |f(0) - f(1)| <= 1e-12.
  static TestFunction from_function(std::function<double(double)> f);

  double operator()(double x) const;
  /// Exact for trig polynomials, trapezoidal for the other kinds.
  double integral() const;

 private:
  enum class Kind { kTrig, kTabulated, kCallable };
  Kind kind_ = Kind::kTrig;
  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<double> samples_;
  std::function<double(double)> fn_;
};

/// (1/n) sum_{k<n} phi(orbit_k).
double birkhoff_average(const TestFunction& phi, double x0, double theta, std::size_t n);

/// Fraction of the first n orbit points in [a, b); requires 0 <= a < b <= 1.
double equidistribution_test(double theta, double a, double b, double x0, std::size_t n);

struct KacResult {
  double mean = 0.0;       ///< mean return time in steps
  std::size_t returns = 0;
  std::uint64_t steps = 0;  ///< rotation steps taken
};

/// Successive return times of the orbit from x0 to [a, b). x0 must lie in the
/// arc. max_steps = 0 picks 100 * n_returns / (b - a); hitting the cap throws
/// kNumerical.
KacResult kac_return_time(double theta, double a, double b, double x0,
                          std::size_t n_returns, std::uint64_t max_steps = 0);

/// theta_d = Z_d + (W_T/T^beta) gamma_d with gamma_d = ln(1 - K/S_d).
struct ThetaPath {
  SamplePath theta;
  std::vector<double> gamma;
};

ThetaPath theta_process(const SamplePath& z, const SamplePath& price, double strike,
                        const ergodic::EmoConfig& cfg);

struct MomentEntry {
  double time = 0.0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased; 0 for a single path
  double std_error = 0.0;
  bool mean_ok = false;   ///< |mean| <= 3 std_error
};

struct MomentReport {
  std::vector<MomentEntry> entries;
  bool passed = false;
};

/// Ensemble mean and variance of theta at the anchor times (linear
/// interpolation). Throws when fewer than min_paths paths are supplied.
MomentReport theta_moment_check(std::span<const ThetaPath> ensemble,
                                std::span<const double> anchors, std::size_t min_paths = 100);

}  // namespace logerg::rotation
