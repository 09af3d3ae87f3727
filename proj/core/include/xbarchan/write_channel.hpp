#pragma once

#include "xbarchan/params.hpp"

namespace xbar {

enum class SwitchOp { set, reset };

/// Median/scale model of a stochastic switching event:
/// ln(tau) = alpha * V_effective + beta, switching time log-normal with
/// scale sigma, pulse width t_pulse.
struct SwitchingModel {
  double alpha = 0.0;
  double beta = 0.0;
  double sigma = 1.0;    // > 0
  double t_pulse = 1.0;  // > 0, microseconds

  static SwitchingModel for_set(const DeviceParams& p) {
    return {p.alpha_set, p.beta_set, p.sigma_set, p.t_set};
  }
  static SwitchingModel for_reset(const DeviceParams& p) {
    return {p.alpha_reset, p.beta_reset, p.sigma_reset, p.t_reset};
  }
};

/// P(state flips within t_pulse) given the previous-state resistance
/// r_prev seen by the write driver. The effective voltage keeps the
/// sign of the applied pulse (set pulses are negative). Under ideal
/// selectors this is the exact divider; with a finite series selector
/// but open disengaged branches, the exact single-branch form; otherwise
/// a full nodal solve over a background grid of unselected cells at the
/// prior-weighted log-median resistance.
double switch_success_given_r(double r_prev, const CellLocation& loc,
                              const SwitchingModel& model, SwitchOp kind,
                              const DeviceParams& p);

/// P(Y=0 | X=1, S*=0): a set pulse fails to switch an HRS cell,
/// marginalized over the HRS resistance distribution.
double set_failure_prob(const CellLocation& loc, const DeviceParams& p);

/// P(Y=1 | X=0, S*=1): a reset pulse fails to switch an LRS cell,
/// marginalized over the LRS resistance distribution.
double reset_failure_prob(const CellLocation& loc, const DeviceParams& p);

struct WriteChannelResult {
  BacParams bac;      // p01 = (1-q) * reset_fail, p10 = q * set_fail
  double set_fail;    // conditional set failure probability
  double reset_fail;  // conditional reset failure probability
};

/// Write BAC for a cell, with the prior q taken from the params.
WriteChannelResult write_channel(const CellLocation& loc,
                                 const DeviceParams& p);

/// Same, with an explicit prior (used when searching over the input
/// distribution: the crossover probabilities themselves depend on q).
WriteChannelResult write_channel(const CellLocation& loc,
                                 const DeviceParams& p, double q);

/// Raw write bit-error rate P(Y != X) under input prior q for symbol 0.
double write_ber(const WriteChannelResult& w, double q);

}  // namespace xbar
