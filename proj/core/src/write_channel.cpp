#include "xbarchan/write_channel.hpp"

#include <cmath>
#include <stdexcept>

#include "xbarchan/circuit.hpp"
#include "xbarchan/math.hpp"

namespace xbar {

namespace {

double applied_voltage(SwitchOp kind, const DeviceParams& p) {
  return kind == SwitchOp::set ? p.v_w_set : p.v_w_reset;
}

double effective_voltage(double r_prev, const CellLocation& loc,
                         SwitchOp kind, const DeviceParams& p) {
  const double v_w = applied_voltage(kind, p);
  if (p.r_sh.open() && p.r_su.open()) {
    // single conducting branch: driver - j*r_w - selector - cell - i*r_b
    const double r_sf = p.r_sf.open() ? 0.0 : *p.r_sf.ohms;
    const double acc = accumulated_line_resistance(loc, p);
    return v_w * r_prev / (acc + r_sf + r_prev);
  }
  if (!(p.r_w > 0.0 && p.r_b > 0.0)) {
    throw std::invalid_argument(
        "write channel: finite disengaged selectors need positive line "
        "resistances for the nodal solve");
  }
  // background cells at the prior-weighted log-median resistance
  const double r_bg =
      std::exp(p.q_prior * p.mu_h + (1.0 - p.q_prior) * p.mu_l);
  // a bias-selected write only sees the previous state of the target cell
  auto geom = ArrayGeometry{loc.row, loc.col};
  ResistanceGrid grid = ResistanceGrid::uniform(geom, r_bg);
  grid.r[static_cast<size_t>(loc.row - 1) * geom.cols + (loc.col - 1)] =
      r_prev;
  return effective_write_voltage_kcl(grid, loc, v_w, p);
}

}  // namespace

double switch_success_given_r(double r_prev, const CellLocation& loc,
                              const SwitchingModel& model, SwitchOp kind,
                              const DeviceParams& p) {
  if (!(r_prev > 0.0)) {
    throw std::invalid_argument("switch_success_given_r: r_prev <= 0");
  }
  const double v = effective_voltage(r_prev, loc, kind, p);
  const double ln_tau = model.alpha * v + model.beta;
  return 1.0 - q_function((std::log(model.t_pulse) - ln_tau) / model.sigma);
}

namespace {

double marginal_failure(const CellLocation& loc, const DeviceParams& p,
                        SwitchOp kind) {
  // previous state is the one being overwritten: set acts on HRS cells,
  // reset on LRS cells
  const double mu = kind == SwitchOp::set ? p.mu_h : p.mu_l;
  const double sg = kind == SwitchOp::set ? p.sigma_h : p.sigma_l;
  const SwitchingModel model = kind == SwitchOp::set
                                   ? SwitchingModel::for_set(p)
                                   : SwitchingModel::for_reset(p);
  return normal_expectation(
      [&](double u) {
        const double r_prev = std::exp(mu + sg * u);
        return 1.0 - switch_success_given_r(r_prev, loc, model, kind, p);
      },
      1e-12);
}

}  // namespace

double set_failure_prob(const CellLocation& loc, const DeviceParams& p) {
  return marginal_failure(loc, p, SwitchOp::set);
}

double reset_failure_prob(const CellLocation& loc, const DeviceParams& p) {
  return marginal_failure(loc, p, SwitchOp::reset);
}

WriteChannelResult write_channel(const CellLocation& loc,
                                 const DeviceParams& p) {
  return write_channel(loc, p, p.q_prior);
}

WriteChannelResult write_channel(const CellLocation& loc,
                                 const DeviceParams& p, double q) {
  WriteChannelResult out;
  out.set_fail = set_failure_prob(loc, p);
  out.reset_fail = reset_failure_prob(loc, p);
  out.bac.p01 = (1.0 - q) * out.reset_fail;
  out.bac.p10 = q * out.set_fail;
  return out;
}

double write_ber(const WriteChannelResult& w, double q) {
  return q * w.bac.p01 + (1.0 - q) * w.bac.p10;
}

}  // namespace xbar
