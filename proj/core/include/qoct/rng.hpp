#pragma once

#include <cstdint>
#include <string_view>

namespace qoct {

/// Counter-based random stream keyed by (seed, purpose).
///
/// Each draw hashes (key, counter) through SplitMix64, so independent
/// streams never share state and batch runs are order-independent.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view purpose);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal (Box-Muller, platform-independent).
  double gaussian();

  /// Fair +1 / -1 draw.
  int sign();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace qoct
