#pragma once

#include "xbarchan/params.hpp"

namespace xbar {

/// Crossover probabilities of the write channel followed by the read
/// channel.
BacParams cascade(const BacParams& write, const BacParams& read);

/// I(X;Z) in bits for a BAC with fixed crossovers and input prior q for
/// symbol 0.
double mutual_information(double q, const BacParams& bac);

struct CapacityResult {
  double bits = 0.0;
  double q_star = 0.5;  // maximizing input prior
};

/// Capacity of the cascaded channel of one cell under resistance
/// threshold r_th. The write crossovers are recomputed for every trial
/// prior, so this is a scalar search rather than a fixed-channel
/// optimization; absolute tolerance 1e-6 bits.
CapacityResult cell_capacity(const CellLocation& loc, const DeviceParams& p,
                             double r_th);

/// Arithmetic mean of cell_capacity over every cell of the array.
/// Cells sharing an accumulated line resistance share one evaluation;
/// the reduction order is fixed (row-major) for reproducible sums.
double averaged_capacity(const ArrayGeometry& geom, const DeviceParams& p,
                         double r_th);

}  // namespace xbar
