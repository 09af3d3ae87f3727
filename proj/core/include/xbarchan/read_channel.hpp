#pragma once

#include "xbarchan/params.hpp"

namespace xbar {

/// Fixed-threshold current detector: 0 (HRS) when current <= i_th,
/// 1 (LRS) otherwise. Ties go to HRS.
int threshold_detect(double current, double i_th);

struct ReadChannelResult {
  BacParams bac;   // p01 = P(Z=1|Y=0), p10 = P(Z=0|Y=1)
  double r_th;     // resistance-domain threshold used
  CellLocation loc;
};

/// Read BAC of a cell under resistance threshold r_th. The effective
/// threshold seen by the cell is r_th - (i*r_b + j*r_w); when that is
/// <= 0 an LRS cell can never be read correctly: p10 = 1, p01 = 0.
ReadChannelResult read_channel(const CellLocation& loc, double r_th,
                               const DeviceParams& p);

/// The two crossover probabilities as a function of the effective
/// (already line-shifted) resistance threshold. Shared kernel for
/// read_channel and the threshold-optimization module.
BacParams read_crossovers_at_effective_threshold(double r_eff,
                                                 const DeviceParams& p);

}  // namespace xbar
