#include "xbarchan/ldca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "xbarchan/capacity.hpp"
#include "xbarchan/circuit.hpp"
#include "xbarchan/read_channel.hpp"
#include "xbarchan/write_channel.hpp"

namespace xbar {

bool Allocation::is_integral(double tol) const {
  for (double w : weights) {
    if (std::min(std::abs(w), std::abs(1.0 - w)) > tol) return false;
  }
  return true;
}

int Allocation::selected(int i) const {
  int best = 0;
  for (int l = 1; l < codes; ++l) {
    if (at(i, l) > at(i, best)) best = l;
  }
  return best;
}

double Allocation::mean_rate(std::span<const double> rates) const {
  double sum = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int l = 0; l < codes; ++l) sum += at(i, l) * rates[l];
  }
  return sum / rows;
}

double Allocation::objective(const CostMatrix& c) const {
  double sum = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int l = 0; l < codes; ++l) sum += at(i, l) * c.at(i, l);
  }
  return sum;
}

namespace {

double wordline_mean_p_impl(int row, const ArrayGeometry& geom,
                            const DeviceParams& p,
                            const std::function<double(const CellLocation&)>&
                                threshold_at) {
  require_inside(geom, {row, 1});
  const double q = p.q_prior;
  std::unordered_map<double, WriteChannelResult> write_by_acc;
  double sum = 0.0;
  for (int j = 1; j <= geom.cols; ++j) {
    const CellLocation loc{row, j};
    const double acc = accumulated_line_resistance(loc, p);
    auto it = write_by_acc.find(acc);
    if (it == write_by_acc.end()) {
      it = write_by_acc.emplace(acc, write_channel(loc, p)).first;
    }
    const BacParams read =
        read_crossovers_at_effective_threshold(threshold_at(loc) - acc, p);
    const BacParams casc = cascade(it->second.bac, read);
    sum += q * casc.p01 + (1.0 - q) * casc.p10;
  }
  return sum / geom.cols;
}

}  // namespace

double wordline_mean_p(int row, const ArrayGeometry& geom,
                       const DeviceParams& p, double r_th) {
  return wordline_mean_p_impl(row, geom, p,
                              [&](const CellLocation&) { return r_th; });
}

double wordline_mean_p(int row, const ArrayGeometry& geom,
                       const DeviceParams& p, const ThresholdPlan& plan) {
  return wordline_mean_p_impl(
      row, geom, p,
      [&](const CellLocation& loc) { return plan.threshold_at(loc, p); });
}

double block_cost(int n, int t, double p_bar) {
  if (!(p_bar >= 0.0 && p_bar <= 1.0)) {
    throw std::invalid_argument("block_cost: p_bar outside [0,1]");
  }
  if (t >= n) return 0.0;
  if (p_bar <= 0.0) return 0.0;
  if (p_bar >= 1.0) return 1.0;
  // sum of binomial terms for e > t, accumulated in the log domain
  const double lp = std::log(p_bar);
  const double l1p = std::log1p(-p_bar);
  std::vector<double> logs;
  logs.reserve(n - t);
  for (int e = t + 1; e <= n; ++e) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(e + 1.0) -
                      std::lgamma(n - e + 1.0);
    logs.push_back(lc + e * lp + (n - e) * l1p);
  }
  const double mx = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double lv : logs) sum += std::exp(lv - mx);
  return std::clamp(std::exp(mx) * sum, 0.0, 1.0);
}

CostMatrix build_cost_matrix(const ArrayGeometry& geom, const DeviceParams& p,
                             const ThresholdPlan& plan,
                             std::span<const CodeSpec> codes) {
  validate(geom);
  if (codes.empty()) {
    throw std::invalid_argument("build_cost_matrix: empty code set");
  }
  std::vector<CodeSpec> ordered(codes.begin(), codes.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const CodeSpec& a, const CodeSpec& b) { return a.t < b.t; });
  CostMatrix cm;
  cm.rows = geom.rows;
  cm.codes = static_cast<int>(ordered.size());
  cm.cost.resize(static_cast<size_t>(cm.rows) * cm.codes);
  cm.rates.resize(cm.codes);
  for (int l = 0; l < cm.codes; ++l) cm.rates[l] = ordered[l].rate();
  cm.r_goal = ordered[static_cast<size_t>(cm.codes) / 2].rate();
  for (int i = 1; i <= geom.rows; ++i) {
    const double pb = wordline_mean_p(i, geom, p, plan);
    for (int l = 0; l < cm.codes; ++l) {
      cm.cost[static_cast<size_t>(i - 1) * cm.codes + l] =
          block_cost(ordered[l].n, ordered[l].t, pb);
    }
  }
  return cm;
}

namespace {

// per-wordline argmin of c_il - lambda*r_l; ties to the lower-rate code
std::vector<int> score_argmin(const CostMatrix& c, double lambda) {
  std::vector<int> pick(c.rows, 0);
  for (int i = 0; i < c.rows; ++i) {
    int best = 0;
    double best_score = c.at(i, 0) - lambda * c.rates[0];
    for (int l = 1; l < c.codes; ++l) {
      const double s = c.at(i, l) - lambda * c.rates[l];
      if (s < best_score ||
          (s == best_score && c.rates[l] < c.rates[best])) {
        best = l;
        best_score = s;
      }
    }
    pick[i] = best;
  }
  return pick;
}

double mean_rate_of(const std::vector<int>& pick, const CostMatrix& c) {
  double sum = 0.0;
  for (int l : pick) sum += c.rates[l];
  return sum / pick.size();
}

Allocation one_hot(const std::vector<int>& pick, int codes) {
  Allocation a;
  a.rows = static_cast<int>(pick.size());
  a.codes = codes;
  a.weights.assign(static_cast<size_t>(a.rows) * codes, 0.0);
  for (int i = 0; i < a.rows; ++i) {
    a.weights[static_cast<size_t>(i) * codes + pick[i]] = 1.0;
  }
  return a;
}

}  // namespace

LpResult solve_lp(const CostMatrix& cost, double r_lp) {
  if (cost.rows < 1 || cost.codes < 1) {
    throw std::invalid_argument("solve_lp: empty cost matrix");
  }
  const double max_rate =
      *std::max_element(cost.rates.begin(), cost.rates.end());
  if (r_lp > max_rate + 1e-12) {
    throw std::invalid_argument("solve_lp: infeasible rate budget");
  }

  // mean-of-identical rates can land an ulp off the target
  const double rate_slop = 1e-12;
  const auto pick0 = score_argmin(cost, 0.0);
  if (mean_rate_of(pick0, cost) >= r_lp - rate_slop) {
    LpResult out{one_hot(pick0, cost.codes), 0.0, 0.0};
    out.objective = out.alloc.objective(cost);
    return out;
  }

  // rate(lambda) is nondecreasing; bracket the critical multiplier
  double lo = 0.0, hi = 1.0;
  while (mean_rate_of(score_argmin(cost, hi), cost) < r_lp - rate_slop) {
    hi *= 2.0;
    if (hi > 1e30) {
      throw std::runtime_error("solve_lp: multiplier bracket failed");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mean_rate_of(score_argmin(cost, mid), cost) < r_lp - rate_slop) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const auto pick_lo = score_argmin(cost, lo);
  const auto pick_hi = score_argmin(cost, hi);
  Allocation alloc = one_hot(pick_hi, cost.codes);
  double rate = mean_rate_of(pick_hi, cost);
  // walk the wordlines whose choice crosses at the critical multiplier
  // back toward the low side until the budget is exactly met; at most
  // one wordline stays split
  for (int i = 0; i < cost.rows && rate > r_lp + 1e-15; ++i) {
    if (pick_lo[i] == pick_hi[i]) continue;
    const double dr =
        (cost.rates[pick_hi[i]] - cost.rates[pick_lo[i]]) / cost.rows;
    if (dr <= 0.0) continue;
    const double frac = std::min(1.0, (rate - r_lp) / dr);
    alloc.weights[static_cast<size_t>(i) * cost.codes + pick_hi[i]] -= frac;
    alloc.weights[static_cast<size_t>(i) * cost.codes + pick_lo[i]] += frac;
    rate -= frac * dr;
  }
  LpResult out{std::move(alloc), 0.0, hi};
  out.objective = out.alloc.objective(cost);
  return out;
}

Allocation round_allocation(const Allocation& relaxed) {
  Allocation out;
  out.rows = relaxed.rows;
  out.codes = relaxed.codes;
  out.weights.assign(relaxed.weights.size(), 0.0);
  for (int i = 0; i < relaxed.rows; ++i) {
    int best = 0;
    for (int l = 1; l < relaxed.codes; ++l) {
      // >= sends ties to the highest index (strongest code)
      if (relaxed.at(i, l) >= relaxed.at(i, best)) best = l;
    }
    out.weights[static_cast<size_t>(i) * out.codes + best] = 1.0;
  }
  return out;
}

namespace {

LdcaResult ldca_loop(const CostMatrix& cost, double r_goal, double r_tol,
                     double r_update, int max_iter) {
  const auto [min_it, max_it] =
      std::minmax_element(cost.rates.begin(), cost.rates.end());
  const double min_rate = *min_it, max_rate = *max_it;
  if (r_goal > max_rate + 1e-12) {
    throw std::invalid_argument("ldca_solve: infeasible r_goal");
  }
  if (r_update <= 0.0) {
    r_update = (max_rate - min_rate) / (2.0 * cost.codes);
    if (r_update <= 0.0) r_update = r_tol;
  }

  double r_lp = r_goal;
  LdcaResult best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= max_iter; ++iter) {
    const LpResult lp = solve_lp(cost, std::clamp(r_lp, min_rate, max_rate));
    const Allocation rounded = round_allocation(lp.alloc);
    const double r_hat = rounded.mean_rate(cost.rates);
    const double gap = std::abs(r_hat - r_goal);
    if (gap < best_gap ||
        (gap == best_gap && rounded.objective(cost) < best.objective)) {
      best = LdcaResult{rounded, r_hat, rounded.objective(cost), iter, false,
                        r_lp};
      best_gap = gap;
    }
    if (gap <= r_tol) {
      best.converged = true;
      best.iterations = iter;
      return best;
    }
    r_lp += (r_hat > r_goal + r_tol) ? -r_update : r_update;
  }
  best.iterations = max_iter;
  return best;
}

}  // namespace

LdcaResult ldca_solve(const CostMatrix& cost, double r_goal, double r_tol,
                      double r_update, int max_iter) {
  return ldca_loop(cost, r_goal, r_tol, r_update, max_iter);
}

LdcaResult ldca_solve_regularized(const CostMatrix& cost, double r_goal,
                                  std::span<const double> c_dec, double r_tol,
                                  double r_update, int max_iter) {
  if (static_cast<int>(c_dec.size()) != cost.codes) {
    throw std::invalid_argument("ldca_solve_regularized: weight size mismatch");
  }
  for (double w : c_dec) {
    if (w < 0.0) {
      throw std::invalid_argument("ldca_solve_regularized: negative weight");
    }
  }
  CostMatrix reg = cost;
  for (int i = 0; i < reg.rows; ++i) {
    for (int l = 0; l < reg.codes; ++l) {
      reg.cost[static_cast<size_t>(i) * reg.codes + l] += c_dec[l];
    }
  }
  return ldca_loop(reg, r_goal, r_tol, r_update, max_iter);
}

}  // namespace xbar
