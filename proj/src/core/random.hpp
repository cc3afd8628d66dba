#pragma once

#include <cstdint>
#include <random>

namespace logerg {

/// Per-path seed from (master seed, path index): SplitMix64 finaliser over the
/// pair, so ensemble members are independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Standard normal draws from mt19937_64 via Box-Muller.
///
/// std::normal_distribution is implementation-defined, which would make paths
/// differ between standard libraries; this keeps a seed bit-reproducible
/// anywhere mt19937_64 is (i.e. everywhere).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  double uniform_open();  // (0, 1)

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace logerg
