#pragma once

#include <cstdint>

namespace xbar {

/// SplitMix64 step: advances the state and returns the next word.
uint64_t splitmix64_next(uint64_t& state);

/// Counter-based per-cell random stream: the (seed, row, col) triple is
/// mixed into an independent substream, so results do not depend on
/// scheduling order.
class CellRng {
 public:
  CellRng(uint64_t seed, int row, int col);

  uint64_t next_u64();
  /// Uniform double strictly inside (0, 1).
  double uniform();
  /// Standard normal by inverse-CDF transform.
  double normal();

 private:
  uint64_t state_;
};

}  // namespace xbar
