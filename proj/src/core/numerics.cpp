#include "numerics.hpp"

#include <cmath>

namespace logerg {

double pairwise_sum(std::span<const double> xs) noexcept {
  constexpr std::size_t kBlock = 16;
  if (xs.size() <= kBlock) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double trapezoid(std::span<const double> ys, double h) noexcept {
  if (ys.size() < 2) return 0.0;
  const double inner = pairwise_sum(ys.subspan(1, ys.size() - 2));
  return h * (0.5 * (ys.front() + ys.back()) + inner);
}

void cumulative_trapezoid(std::span<const double> ys, double h, std::span<double> out) noexcept {
  if (out.empty()) return;
  out[0] = 0.0;
  for (std::size_t k = 1; k < ys.size() && k < out.size(); ++k) {
    out[k] = out[k - 1] + 0.5 * h * (ys[k - 1] + ys[k]);
  }
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

}  // namespace logerg
