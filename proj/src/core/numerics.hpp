#pragma once

#include <cstddef>
#include <span>

namespace logerg {

/// Pairwise (cascade) summation. The result depends only on the input order,
/// never on how a caller chunked the work, so ensemble reductions stay
/// bit-reproducible.
double pairwise_sum(std::span<const double> xs) noexcept;

/// Trapezoidal rule on a uniform grid with spacing h.
double trapezoid(std::span<const double> ys, double h) noexcept;

/// Running trapezoidal integral: out[0] = 0, out[k] = integral up to node k.
void cumulative_trapezoid(std::span<const double> ys, double h, std::span<double> out) noexcept;

/// Standard normal CDF via erfc (absolute error well below 1e-12).
double normal_cdf(double x) noexcept;
double normal_pdf(double x) noexcept;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace logerg
