#include "xbarchan/capacity.hpp"

#include <cmath>
#include <unordered_map>

#include "xbarchan/circuit.hpp"
#include "xbarchan/math.hpp"
#include "xbarchan/read_channel.hpp"
#include "xbarchan/write_channel.hpp"

namespace xbar {

BacParams cascade(const BacParams& w, const BacParams& r) {
  return BacParams{w.p01 * (1.0 - r.p10) + (1.0 - w.p01) * r.p01,
                   w.p10 * (1.0 - r.p01) + (1.0 - w.p10) * r.p10};
}

double mutual_information(double q, const BacParams& bac) {
  const double z = q * (1.0 - bac.p01) + (1.0 - q) * bac.p10;
  return binary_entropy(z) - q * binary_entropy(bac.p01) -
         (1.0 - q) * binary_entropy(bac.p10);
}

namespace {

struct CellChannelKernels {
  double set_fail;
  double reset_fail;
  BacParams read;
};

double composite_mi(double q, const CellChannelKernels& k) {
  const BacParams write{(1.0 - q) * k.reset_fail, q * k.set_fail};
  return mutual_information(q, cascade(write, k.read));
}

CapacityResult maximize_over_prior(const CellChannelKernels& k) {
  // coarse grid, then golden-section refinement around the best cell
  constexpr int kGrid = 201;
  int best = 0;
  double best_val = -1.0;
  for (int g = 0; g < kGrid; ++g) {
    const double q = static_cast<double>(g) / (kGrid - 1);
    const double v = composite_mi(q, k);
    if (v > best_val) {
      best_val = v;
      best = g;
    }
  }
  const double step = 1.0 / (kGrid - 1);
  const double lo = std::max(0.0, best * step - step);
  const double hi = std::min(1.0, best * step + step);
  const double q_star = golden_section_min(
      [&](double q) { return -composite_mi(q, k); }, lo, hi, 1e-10);
  return CapacityResult{composite_mi(q_star, k), q_star};
}

}  // namespace

CapacityResult cell_capacity(const CellLocation& loc, const DeviceParams& p,
                             double r_th) {
  const CellChannelKernels k{
      set_failure_prob(loc, p), reset_failure_prob(loc, p),
      read_channel(loc, r_th, p).bac};
  return maximize_over_prior(k);
}

double averaged_capacity(const ArrayGeometry& geom, const DeviceParams& p,
                         double r_th) {
  validate(geom);
  std::unordered_map<double, double> by_acc;
  by_acc.reserve(static_cast<size_t>(geom.rows + geom.cols));
  double sum = 0.0;
  for (int i = 1; i <= geom.rows; ++i) {
    for (int j = 1; j <= geom.cols; ++j) {
      const CellLocation loc{i, j};
      const double acc = accumulated_line_resistance(loc, p);
      auto it = by_acc.find(acc);
      if (it == by_acc.end()) {
        it = by_acc.emplace(acc, cell_capacity(loc, p, r_th).bits).first;
      }
      sum += it->second;
    }
  }
  return sum / static_cast<double>(geom.cell_count());
}

}  // namespace xbar
