#include "xbarchan/read_channel.hpp"

#include <cmath>
#include <stdexcept>

#include "xbarchan/circuit.hpp"
#include "xbarchan/math.hpp"

namespace xbar {

int threshold_detect(double current, double i_th) {
  return current <= i_th ? 0 : 1;
}

BacParams read_crossovers_at_effective_threshold(double r_eff,
                                                 const DeviceParams& p) {
  if (r_eff <= 0.0) {
    return BacParams{0.0, 1.0};
  }
  const double ln_r = std::log(r_eff);
  return BacParams{q_function((p.mu_h - ln_r) / p.sigma_h),
                   q_function((ln_r - p.mu_l) / p.sigma_l)};
}

ReadChannelResult read_channel(const CellLocation& loc, double r_th,
                               const DeviceParams& p) {
  if (!(r_th > 0.0)) {
    throw std::invalid_argument("read_channel: r_th must be positive");
  }
  const double r_eff = r_th - accumulated_line_resistance(loc, p);
  return ReadChannelResult{read_crossovers_at_effective_threshold(r_eff, p),
                           r_th, loc};
}

}  // namespace xbar
