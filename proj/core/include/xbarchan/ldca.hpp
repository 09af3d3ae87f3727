#pragma once

#include <span>
#include <vector>

#include "xbarchan/bch.hpp"
#include "xbarchan/params.hpp"
#include "xbarchan/threshold.hpp"

namespace xbar {

/// Per-wordline, per-code estimated block failure probabilities plus
/// the code rates. Codes are column-indexed in the order given at
/// construction; build_cost_matrix orders them by increasing t.
struct CostMatrix {
  int rows = 0;   // m wordlines
  int codes = 0;  // L codes
  std::vector<double> cost;   // row-major, rows x codes
  std::vector<double> rates;  // length codes
  double r_goal = 0.0;

  double at(int i, int l) const {
    return cost[static_cast<size_t>(i) * codes + l];
  }
};

/// Code-selection weights per wordline. Integral allocations have
/// one-hot rows; the LP relaxation may leave at most one fractional
/// row.
struct Allocation {
  int rows = 0;
  int codes = 0;
  std::vector<double> weights;  // row-major, rows x codes; rows sum to 1

  double at(int i, int l) const {
    return weights[static_cast<size_t>(i) * codes + l];
  }
  bool is_integral(double tol = 1e-12) const;
  /// Index of the selected code on wordline i (integral allocations).
  int selected(int i) const;
  /// Mean code rate (1/m) sum_i r^T a_i.
  double mean_rate(std::span<const double> rates) const;
  /// Objective sum_i c_i^T a_i.
  double objective(const CostMatrix& c) const;
};

/// Mean cascaded-channel error probability over wordline `row` under a
/// scalar resistance threshold.
double wordline_mean_p(int row, const ArrayGeometry& geom,
                       const DeviceParams& p, double r_th);
/// Same under a threshold plan (per-cell thresholds allowed).
double wordline_mean_p(int row, const ArrayGeometry& geom,
                       const DeviceParams& p, const ThresholdPlan& plan);

/// Block decode-failure probability of a t-error-correcting length-n
/// code over an averaged BSC: the upper binomial tail beyond t,
/// evaluated with log-domain terms.
double block_cost(int n, int t, double p_bar);

/// Cost matrix for a set of codes on an array; codes are sorted by
/// increasing t. r_goal defaults to the rate of the middle code.
CostMatrix build_cost_matrix(const ArrayGeometry& geom, const DeviceParams& p,
                             const ThresholdPlan& plan,
                             std::span<const CodeSpec> codes);

struct LpResult {
  Allocation alloc;
  double objective = 0.0;
  double lambda = 0.0;  // multiplier of the rate constraint
};

/// Relaxed allocation problem: minimize total cost over per-wordline
/// simplex weights subject to the mean-rate budget. Solved by
/// dualizing the single rate constraint: each wordline independently
/// minimizes c_il - lambda*r_l, with lambda >= 0 bisected until the
/// mean rate is tight at r_lp (or lambda = 0 when the pure cost argmin
/// already meets it). At most one wordline ends up fractional. Throws
/// std::invalid_argument when r_lp exceeds every code rate.
LpResult solve_lp(const CostMatrix& cost, double r_lp);

/// One-hot rounding by per-wordline argmax; ties go to the
/// highest-index (strongest, in build_cost_matrix order) code.
Allocation round_allocation(const Allocation& relaxed);

struct LdcaResult {
  Allocation alloc;
  double achieved_rate = 0.0;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_r_lp = 0.0;
};

/// Iterative LP-round-adjust loop: solve the relaxation at R_LP, round,
/// compare the achieved rate against r_goal, and step R_LP up or down
/// by r_update until within r_tol (or max_iter, returning the
/// best-so-far allocation with converged = false).
LdcaResult ldca_solve(const CostMatrix& cost, double r_goal,
                      double r_tol = 1e-3, double r_update = -1.0,
                      int max_iter = 20);

/// Same pipeline on the decoder-penalized cost c_il + c_dec[l].
LdcaResult ldca_solve_regularized(const CostMatrix& cost, double r_goal,
                                  std::span<const double> c_dec,
                                  double r_tol = 1e-3, double r_update = -1.0,
                                  int max_iter = 20);

}  // namespace xbar
