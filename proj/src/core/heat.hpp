#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace logerg::pricing {

/// Uniform spatial grid y_j = lower + j*spacing, j = 0..count-1.
struct SpatialGrid {
  double lower = 0.0;
  double spacing = 0.0;
  std::size_t count = 0;

  double at(std::size_t j) const noexcept { return lower + static_cast<double>(j) * spacing; }
  double upper() const noexcept { return at(count - 1); }
  /// Grid with `half` nodes on each side of `center` (2*half+1 nodes).
  static SpatialGrid centered(double center, double spacing, std::size_t half);
};

/// U_tau = (eta/2) U_yy on a tabulated domain.
struct HeatProblem {
  double eta = 1.0;
  SpatialGrid grid;
  std::vector<double> initial;  ///< U(y_j, 0)
  double tau_end = 0.0;
  /// Exact solution outside the domain (y, tau) -> U, used as Dirichlet data by
  /// the finite-difference solver. Without it the edge values are held fixed.
  std::function<double(double, double)> far_field;

  void validate() const;
};

/// Gaussian heat kernel with variance tau*eta.
double heat_kernel(double y, double tau, double eta);

/// Kernel mass outside [-half_width, half_width].
double kernel_tail_mass(double half_width, double tau, double eta);

/// Direct trapezoidal convolution with the heat kernel, O(n^2).
/// Refuses (kInvalidArgument, naming the required width) when the grid cannot
/// hold the kernel: mass outside half the domain width above 1e-4.
std::vector<double> solve_heat_convolution(const HeatProblem& problem);

/// Evaluates the convolution at one node only.
double solve_heat_convolution_at(const HeatProblem& problem, std::size_t node);

enum class FdScheme { kExplicit, kImplicit, kCrankNicolson };

/// Central second differences in y. The explicit scheme requires
/// eta*dt/dy^2 <= 1; Crank-Nicolson starts with two implicit half-steps
/// (Rannacher smoothing) to damp the payoff kink.
std::vector<double> solve_heat_fd(const HeatProblem& problem, double dt,
                                  FdScheme scheme = FdScheme::kCrankNicolson);

}  // namespace logerg::pricing
