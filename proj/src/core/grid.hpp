#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace logerg {

/// Uniform time grid t_k = t0 + k*dt, k = 0..n, with t_n = T.
class TimeGrid {
 public:
  /// Builds the grid on [0, horizon] with n = round(horizon/step) steps.
  /// The step is then re-derived as horizon/n so the last node lands on T.
  static TimeGrid uniform(double horizon, double step);

  double horizon() const noexcept { return horizon_; }
  double step() const noexcept { return step_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_ + 1; }

  double time(std::size_t k) const noexcept {
    return k == steps_ ? horizon_ : static_cast<double>(k) * step_;
  }
  std::vector<double> times() const;

  /// Same node set (within a relative rounding tolerance).
  bool matches(const TimeGrid& other) const noexcept;

 private:
  TimeGrid(double horizon, double step, std::size_t steps)
      : horizon_(horizon), step_(step), steps_(steps) {}

  double horizon_;
  double step_;
  std::size_t steps_;
};

enum class PathKind { kWiener, kPrice, kLogPrice, kZProcess, kTheta };

std::string_view to_string(PathKind kind) noexcept;
PathKind path_kind_from_string(std::string_view name);

/// A discretised realisation on a TimeGrid; values.size() == grid.size().
class SamplePath {
 public:
  SamplePath(TimeGrid grid, std::vector<double> values, PathKind kind);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }
  PathKind kind() const noexcept { return kind_; }
  double back() const noexcept { return values_.back(); }

  /// Linear interpolation between the bracketing nodes; clamps outside [0,T].
  double at_time(double t) const noexcept;

 private:
  TimeGrid grid_;
  std::vector<double> values_;
  PathKind kind_;
};

/// Throws kGridMismatch unless both grids carry the same nodes.
void require_same_grid(const TimeGrid& a, const TimeGrid& b,
                       std::string_view context);

}  // namespace logerg
