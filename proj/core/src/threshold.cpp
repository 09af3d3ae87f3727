#include "xbarchan/threshold.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "xbarchan/circuit.hpp"
#include "xbarchan/math.hpp"
#include "xbarchan/read_channel.hpp"

namespace xbar {

namespace {

double detection_objective(double ln_r, const DeviceParams& p) {
  return p.q_prior * q_function((p.mu_h - ln_r) / p.sigma_h) +
         (1.0 - p.q_prior) * q_function((ln_r - p.mu_l) / p.sigma_l);
}

}  // namespace

double naive_threshold(const DeviceParams& p) {
  // stationarity of the weighted Q objective in x = ln R:
  //   q*phi((mu_h-x)/s_h)/s_h = (1-q)*phi((x-mu_l)/s_l)/s_l
  // taking logs gives A x^2 + B x + C = 0
  const double sl2 = p.sigma_l * p.sigma_l;
  const double sh2 = p.sigma_h * p.sigma_h;
  const double A = 0.5 / sl2 - 0.5 / sh2;
  const double B = p.mu_h / sh2 - p.mu_l / sl2;
  const double C = std::log(p.q_prior / (1.0 - p.q_prior)) +
                   std::log(p.sigma_l / p.sigma_h) -
                   0.5 * p.mu_h * p.mu_h / sh2 + 0.5 * p.mu_l * p.mu_l / sl2;
  double x = 0.0;
  bool found = false;
  if (std::abs(A) < 1e-14) {
    if (B != 0.0) {
      x = -C / B;
      found = x >= p.mu_l && x <= p.mu_h;
    }
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double root : {(-B + sq) / (2.0 * A), (-B - sq) / (2.0 * A)}) {
        if (root >= p.mu_l && root <= p.mu_h) {
          x = root;
          found = true;
          break;
        }
      }
    }
  }
  if (!found) {
    x = golden_section_min([&](double v) { return detection_objective(v, p); },
                           p.mu_l, p.mu_h, 1e-12);
  }
  return std::exp(x);
}

double dtec_threshold(const CellLocation& loc, double r_th0,
                      const DeviceParams& p) {
  return r_th0 + accumulated_line_resistance(loc, p);
}

double stmc_approx(const ArrayGeometry& geom, double r_th0,
                   const DeviceParams& p) {
  validate(geom);
  return r_th0 + 0.5 * (geom.rows + 1) * p.r_b + 0.5 * (geom.cols + 1) * p.r_w;
}

namespace {

// one fixed-point update over a list of (acc, multiplicity) groups
double stmc_update(double r_prev, double r_th0,
                   const std::vector<std::pair<double, long long>>& groups,
                   long long cells) {
  double mean_log = 0.0;
  for (const auto& [acc, count] : groups) {
    const double arg = 1.0 - acc / r_prev;
    if (!(arg > 0.0)) {
      throw std::runtime_error(
          "stmc_solve: log argument nonpositive; accumulated line resistance "
          "reaches the threshold regime");
    }
    mean_log += std::log(arg) * static_cast<double>(count);
  }
  mean_log /= static_cast<double>(cells);
  return std::exp(std::log(r_th0) - mean_log);
}

StmcResult stmc_solve_groups(
    const std::vector<std::pair<double, long long>>& groups, long long cells,
    double r_th0, double eps, int max_iter) {
  if (!(r_th0 > 0.0)) {
    throw std::invalid_argument("stmc_solve: r_th0 must be positive");
  }
  StmcResult out;
  out.iterates.push_back(r_th0);
  double r_prev = r_th0;
  for (int l = 1; l <= max_iter; ++l) {
    const double r = stmc_update(r_prev, r_th0, groups, cells);
    out.iterates.push_back(r);
    out.iterations = l;
    if (std::abs(r - r_prev) <= eps) {
      out.r_th = r;
      return out;
    }
    r_prev = r;
  }
  throw std::runtime_error("stmc_solve: max_iter exceeded");
}

std::vector<std::pair<double, long long>> acc_groups(const ArrayGeometry& geom,
                                                     const DeviceParams& p,
                                                     int only_col) {
  std::unordered_map<double, long long> hist;
  for (int i = 1; i <= geom.rows; ++i) {
    if (only_col > 0) {
      hist[accumulated_line_resistance({i, only_col}, p)]++;
    } else {
      for (int j = 1; j <= geom.cols; ++j) {
        hist[accumulated_line_resistance({i, j}, p)]++;
      }
    }
  }
  return {hist.begin(), hist.end()};
}

}  // namespace

StmcResult stmc_solve(const ArrayGeometry& geom, double r_th0,
                      const DeviceParams& p, double eps, int max_iter) {
  validate(geom);
  return stmc_solve_groups(acc_groups(geom, p, 0), geom.cell_count(), r_th0,
                           eps, max_iter);
}

StmcResult stmc_solve_column(const ArrayGeometry& geom, int col, double r_th0,
                             const DeviceParams& p, double eps, int max_iter) {
  require_inside(geom, {1, col});
  return stmc_solve_groups(acc_groups(geom, p, col), geom.rows, r_th0, eps,
                           max_iter);
}

double ThresholdPlan::threshold_at(const CellLocation& loc,
                                   const DeviceParams& p) const {
  switch (kind) {
    case ThresholdKind::naive:
      return r_th0;
    case ThresholdKind::dtec:
      return dtec_threshold(loc, r_th0, p);
    case ThresholdKind::stmc_approx:
    case ThresholdKind::stmc_exact:
      return scalar;
  }
  return r_th0;
}

ThresholdPlan make_threshold_plan(ThresholdKind kind,
                                  const ArrayGeometry& geom,
                                  const DeviceParams& p, double eps,
                                  int max_iter) {
  validate(geom);
  ThresholdPlan plan;
  plan.kind = kind;
  plan.geom = geom;
  plan.r_th0 = naive_threshold(p);
  switch (kind) {
    case ThresholdKind::naive:
      plan.scalar = plan.r_th0;
      break;
    case ThresholdKind::dtec:
      plan.scalar = 0.0;
      break;
    case ThresholdKind::stmc_approx:
      plan.scalar = stmc_approx(geom, plan.r_th0, p);
      break;
    case ThresholdKind::stmc_exact:
      plan.scalar = stmc_solve(geom, plan.r_th0, p, eps, max_iter).r_th;
      break;
  }
  return plan;
}

double avg_read_ber(const ArrayGeometry& geom, const ThresholdPlan& plan,
                    const DeviceParams& p) {
  validate(geom);
  std::unordered_map<double, double> by_eff;
  double sum = 0.0;
  for (int i = 1; i <= geom.rows; ++i) {
    for (int j = 1; j <= geom.cols; ++j) {
      const CellLocation loc{i, j};
      const double r_eff = plan.threshold_at(loc, p) -
                           accumulated_line_resistance(loc, p);
      auto it = by_eff.find(r_eff);
      if (it == by_eff.end()) {
        const BacParams bac = read_crossovers_at_effective_threshold(r_eff, p);
        it = by_eff
                 .emplace(r_eff,
                          p.q_prior * bac.p01 + (1.0 - p.q_prior) * bac.p10)
                 .first;
      }
      sum += it->second;
    }
  }
  return sum / static_cast<double>(geom.cell_count());
}

}  // namespace xbar
