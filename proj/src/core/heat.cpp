#include "heat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "error.hpp"
#include "numerics.hpp"

namespace logerg::pricing {

SpatialGrid SpatialGrid::centered(double center, double spacing, std::size_t half) {
  return SpatialGrid{center - static_cast<double>(half) * spacing, spacing, 2 * half + 1};
}

void HeatProblem::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    fail(ErrorCode::kInvalidArgument, "heat problem: eta must be positive");
  }
  if (grid.count < 3 || !(grid.spacing > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "heat problem: need >= 3 nodes and positive spacing");
  }
  if (initial.size() != grid.count) {
    fail(ErrorCode::kGridMismatch, "heat problem: initial data does not match the grid");
  }
  for (std::size_t j = 0; j < initial.size(); ++j) {
    if (!std::isfinite(initial[j])) {
      fail(ErrorCode::kNumerical, "heat problem: non-finite initial value at node " + std::to_string(j));
    }
  }
  if (!(tau_end >= 0.0)) fail(ErrorCode::kInvalidArgument, "heat problem: tau_end must be >= 0");
}

double heat_kernel(double y, double tau, double eta) {
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidArgument, "heat_kernel: tau must be positive");
  if (!(eta > 0.0)) fail(ErrorCode::kInvalidArgument, "heat_kernel: eta must be positive");
  const double var = tau * eta;
  return std::exp(-y * y / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
}

double kernel_tail_mass(double half_width, double tau, double eta) {
  return std::erfc(half_width / std::sqrt(2.0 * tau * eta));
}

namespace {

void check_width(const HeatProblem& p) {
  const double half_width = 0.5 * (p.grid.upper() - p.grid.lower);
  const double tail = kernel_tail_mass(half_width, p.tau_end, p.eta);
  if (tail > 1e-4) {
    // erfc(x) = 1e-4 at x = 2.7510639057...
    const double required = 2.0 * 2.7510639057120607 * std::sqrt(2.0 * p.tau_end * p.eta);
    std::ostringstream msg;
    msg << "solve_heat_convolution: grid width " << (p.grid.upper() - p.grid.lower)
        << " truncates kernel mass " << tail << " > 1e-4; need width >= " << required;
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
}

}  // namespace

double solve_heat_convolution_at(const HeatProblem& problem, std::size_t node) {
  problem.validate();
  if (node >= problem.grid.count) fail(ErrorCode::kInvalidArgument, "convolution: node out of range");
  if (problem.tau_end == 0.0) return problem.initial[node];
  check_width(problem);
  const std::size_t n = problem.grid.count;
  std::vector<double> integrand(n);
  const double y = problem.grid.at(node);
  for (std::size_t j = 0; j < n; ++j) {
    integrand[j] = heat_kernel(y - problem.grid.at(j), problem.tau_end, problem.eta) *
                   problem.initial[j];
  }
  return trapezoid(integrand, problem.grid.spacing);
}

std::vector<double> solve_heat_convolution(const HeatProblem& problem) {
  problem.validate();
  if (problem.tau_end == 0.0) return problem.initial;
  check_width(problem);
  const std::size_t n = problem.grid.count;
  const double h = problem.grid.spacing;
  // The kernel depends only on the node offset.
  std::vector<double> kernel(n);
  for (std::size_t d = 0; d < n; ++d) {
    kernel[d] = heat_kernel(static_cast<double>(d) * h, problem.tau_end, problem.eta);
  }
  std::vector<double> out(n);
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      integrand[j] = kernel[i > j ? i - j : j - i] * problem.initial[j];
    }
    out[i] = trapezoid(integrand, h);
  }
  return out;
}

namespace {

// Solves a tridiagonal system with constant off-diagonal `off` and diagonal
// `diag` on the interior unknowns; rhs is overwritten with the solution.
void solve_tridiagonal(double off, double diag, std::vector<double>& rhs) {
  const std::size_t m = rhs.size();
  std::vector<double> c(m);
  c[0] = off / diag;
  rhs[0] /= diag;
  for (std::size_t i = 1; i < m; ++i) {
    const double denom = diag - off * c[i - 1];
    c[i] = off / denom;
    rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
  }
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace

std::vector<double> solve_heat_fd(const HeatProblem& problem, double dt, FdScheme scheme) {
  problem.validate();
  if (!(dt > 0.0)) fail(ErrorCode::kInvalidArgument, "solve_heat_fd: dt must be positive");
  const std::size_t n = problem.grid.count;
  const double h = problem.grid.spacing;
  std::vector<double> u = problem.initial;
  if (problem.tau_end == 0.0) return u;

  const auto steps = static_cast<std::size_t>(std::ceil(problem.tau_end / dt - 1e-9));
  const double k = problem.tau_end / static_cast<double>(steps);
  const double courant = problem.eta * k / (h * h);
  if (scheme == FdScheme::kExplicit && courant > 1.0) {
    std::ostringstream msg;
    msg << "solve_heat_fd: explicit scheme unstable, eta*dt/dy^2 = " << courant
        << " > 1; use dt <= " << h * h / problem.eta << " or an implicit scheme";
    fail(ErrorCode::kNumerical, msg.str());
  }

  const double left0 = u.front();
  const double right0 = u.back();
  auto boundary = [&](double y, double tau, double held) {
    return problem.far_field ? problem.far_field(y, tau) : held;
  };

  std::vector<double> next(n);
  std::vector<double> rhs(n - 2);
  double tau = 0.0;
  // theta-method step: theta = 0 explicit, 1 implicit, 1/2 Crank-Nicolson.
  auto step = [&](double step_size, double theta) {
    const double r = 0.5 * problem.eta * step_size / (h * h);
    const double tau_next = tau + step_size;
    const double left = boundary(problem.grid.lower, tau_next, left0);
    const double right = boundary(problem.grid.upper(), tau_next, right0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double lap = u[j - 1] - 2.0 * u[j] + u[j + 1];
      rhs[j - 1] = u[j] + (1.0 - theta) * r * lap;
    }
    if (theta == 0.0) {
      std::copy(rhs.begin(), rhs.end(), next.begin() + 1);
    } else {
      rhs.front() += theta * r * left;
      rhs.back() += theta * r * right;
      solve_tridiagonal(-theta * r, 1.0 + 2.0 * theta * r, rhs);
      std::copy(rhs.begin(), rhs.end(), next.begin() + 1);
    }
    next.front() = left;
    next.back() = right;
    u.swap(next);
    tau = tau_next;
  };

  std::size_t done = 0;
  if (scheme == FdScheme::kCrankNicolson && steps >= 1) {
    step(0.5 * k, 1.0);
    step(0.5 * k, 1.0);
    done = 1;
  }
  const double theta = scheme == FdScheme::kExplicit ? 0.0
                       : scheme == FdScheme::kImplicit ? 1.0
                                                       : 0.5;
  for (; done < steps; ++done) step(k, theta);
  return u;
}

}  // namespace logerg::pricing
