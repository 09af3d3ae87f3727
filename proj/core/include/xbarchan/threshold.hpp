#pragma once

#include <vector>

#include "xbarchan/params.hpp"

namespace xbar {

/// Optimal resistance-domain read threshold when line resistance is
/// ignored: argmin over R of q*Q((mu_h - ln R)/sigma_h) +
/// (1-q)*Q((ln R - mu_l)/sigma_l). Solved from the stationarity
/// condition (a quadratic in ln R), taking the root between mu_l and
/// mu_h; falls back to golden-section search when no such root exists.
double naive_threshold(const DeviceParams& p);

/// Per-cell threshold that exactly cancels the line-resistance shift:
/// r_th0 + i*r_b + j*r_w.
double dtec_threshold(const CellLocation& loc, double r_th0,
                      const DeviceParams& p);

/// Closed-form array threshold: r_th0 + (m+1)/2 * r_b + (n+1)/2 * r_w,
/// the mean of the per-cell thresholds.
double stmc_approx(const ArrayGeometry& geom, double r_th0,
                   const DeviceParams& p);

struct StmcResult {
  double r_th = 0.0;
  std::vector<double> iterates;  // iterates[0] = r_th0
  int iterations = 0;
};

/// Fixed-point solver for the array threshold equation
/// ln(r_th0) = (1/mn) sum_ij ln(R - i*r_b - j*r_w).
/// Stops when |R_l - R_{l-1}| <= eps. Throws std::runtime_error if a
/// log argument becomes nonpositive (array too large for the threshold
/// regime) or max_iter is exceeded.
StmcResult stmc_solve(const ArrayGeometry& geom, double r_th0,
                      const DeviceParams& p, double eps = 1e-6,
                      int max_iter = 50);

/// Same solver restricted to one bitline (an m-by-1 sub-array at column
/// `col`), giving one threshold per sense amplifier.
StmcResult stmc_solve_column(const ArrayGeometry& geom, int col,
                             double r_th0, const DeviceParams& p,
                             double eps = 1e-6, int max_iter = 50);

enum class ThresholdKind { naive, dtec, stmc_approx, stmc_exact };

/// A read-threshold assignment for an array: a single scalar for the
/// naive/STMC schemes, the exact shifted per-cell rule for DTEC.
struct ThresholdPlan {
  ThresholdKind kind = ThresholdKind::naive;
  ArrayGeometry geom;
  double r_th0 = 0.0;    // zero-resistance optimum the plan is built on
  double scalar = 0.0;   // array threshold for naive/STMC kinds

  double threshold_at(const CellLocation& loc, const DeviceParams& p) const;
};

/// Builds a plan of the given kind for the array (r_th0 from
/// naive_threshold).
ThresholdPlan make_threshold_plan(ThresholdKind kind,
                                  const ArrayGeometry& geom,
                                  const DeviceParams& p, double eps = 1e-6,
                                  int max_iter = 50);

/// Mean over all cells of q*p01 + (1-q)*p10 under the plan's
/// threshold(s).
double avg_read_ber(const ArrayGeometry& geom, const ThresholdPlan& plan,
                    const DeviceParams& p);

}  // namespace xbar
