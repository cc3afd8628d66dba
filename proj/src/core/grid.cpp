#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace logerg {

TimeGrid TimeGrid::uniform(double horizon, double step) {
  if (!std::isfinite(horizon) || horizon <= 0.0) {
    fail(ErrorCode::kInvalidArgument,
         "time grid: horizon T must be positive, got " + std::to_string(horizon));
  }
  if (!std::isfinite(step) || step <= 0.0) {
    fail(ErrorCode::kInvalidArgument,
         "time grid: step dt must be positive, got " + std::to_string(step));
  }
  const double ratio = horizon / step;
  if (ratio > 1e9) {
    fail(ErrorCode::kInvalidArgument, "time grid: more than 1e9 steps requested");
  }
  const auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (steps < 2) {
    fail(ErrorCode::kInvalidArgument,
         "time grid: need at least 2 steps, T/dt = " + std::to_string(ratio));
  }
  return TimeGrid(horizon, horizon / static_cast<double>(steps), steps);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = time(k);
  return out;
}

bool TimeGrid::matches(const TimeGrid& other) const noexcept {
  if (steps_ != other.steps_) return false;
  const double scale = std::max(std::abs(horizon_), std::abs(other.horizon_));
  return std::abs(horizon_ - other.horizon_) <= 1e-12 * scale;
}

std::string_view to_string(PathKind kind) noexcept {
  switch (kind) {
    case PathKind::kWiener: return "wiener";
    case PathKind::kPrice: return "price";
    case PathKind::kLogPrice: return "logprice";
    case PathKind::kZProcess: return "zprocess";
    case PathKind::kTheta: return "theta";
  }
  return "unknown";
}

PathKind path_kind_from_string(std::string_view name) {
  for (auto kind : {PathKind::kWiener, PathKind::kPrice, PathKind::kLogPrice,
                    PathKind::kZProcess, PathKind::kTheta}) {
    if (to_string(kind) == name) return kind;
  }
  fail(ErrorCode::kInvalidArgument, "unknown path kind '" + std::string(name) + "'");
}

SamplePath::SamplePath(TimeGrid grid, std::vector<double> values, PathKind kind)
    : grid_(grid), values_(std::move(values)), kind_(kind) {
  if (values_.size() != grid_.size()) {
    fail(ErrorCode::kGridMismatch,
         "sample path: " + std::to_string(values_.size()) + " values for a grid of " +
             std::to_string(grid_.size()) + " nodes");
  }
  if (kind_ == PathKind::kPrice) {
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!(values_[k] > 0.0)) {
        fail(ErrorCode::kDomain, "price path: non-positive value " +
                                     std::to_string(values_[k]) + " at index " +
                                     std::to_string(k));
      }
    }
  }
}

double SamplePath::at_time(double t) const noexcept {
  if (t <= 0.0) return values_.front();
  if (t >= grid_.horizon()) return values_.back();
  const double pos = t / grid_.step();
  auto k = static_cast<std::size_t>(pos);
  if (k >= grid_.steps()) k = grid_.steps() - 1;
  const double frac = pos - static_cast<double>(k);
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, std::string_view context) {
  if (!a.matches(b)) {
    fail(ErrorCode::kGridMismatch,
         std::string(context) + ": grids differ (" + std::to_string(a.size()) + " nodes on [0," +
             std::to_string(a.horizon()) + "] vs " + std::to_string(b.size()) +
             " nodes on [0," + std::to_string(b.horizon()) + "])");
  }
}

}  // namespace logerg
