#pragma once

#include <functional>
#include <string>
#include <vector>

namespace logerg::validation {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  ///< measured values against their thresholds
  double seconds = 0.0;
};

struct ValidationOptions {
  /// Multiplies every tolerance; 1 is the real suite. Anything else is a
  /// deliberate perturbation (a corrupted tolerance must turn the suite red).
  double tolerance_scale = 1.0;
  int only = 0;  ///< 0 runs everything, otherwise the single criterion id
};

std::string criterion_name(int id);

/// Runs the criteria in id order, reporting each as it finishes.
std::vector<CriterionResult> run_validation(
    const ValidationOptions& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace logerg::validation
