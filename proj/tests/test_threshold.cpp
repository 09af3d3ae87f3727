#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "xbarchan/circuit.hpp"
#include "xbarchan/math.hpp"
#include "xbarchan/threshold.hpp"

using namespace xbar;
using testsupport::params_with_r;
using testsupport::TestRng;

namespace {

double q_obj(double ln_r, const DeviceParams& p) {
  auto q = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
  return p.q_prior * q((p.mu_h - ln_r) / p.sigma_h) +
         (1.0 - p.q_prior) * q((ln_r - p.mu_l) / p.sigma_l);
}

}  // namespace

TEST_CASE("symmetric naive threshold sits at the geometric mean") {
  const DeviceParams p = params_with_r(10.0);
  const double r0 = naive_threshold(p);
  CHECK(r0 == doctest::Approx(1e5).epsilon(1e-10));
  CHECK(r0 == doctest::Approx(p.v_r / p.i_th).epsilon(1e-10));
}

TEST_CASE("asymmetric naive threshold matches a grid oracle") {
  DeviceParams p = params_with_r(10.0);
  p.sigma_l = 0.2 * std::log(10.0);
  p.sigma_h = 0.4 * std::log(10.0);
  const double r0 = naive_threshold(p);
  double best_ln = p.mu_l;
  double best_val = q_obj(p.mu_l, p);
  const int steps = 4605;  // 1e-3 step in ln R over [mu_l, mu_h]
  for (int s = 0; s <= steps; ++s) {
    const double ln_r = p.mu_l + (p.mu_h - p.mu_l) * s / steps;
    const double v = q_obj(ln_r, p);
    if (v < best_val) {
      best_val = v;
      best_ln = ln_r;
    }
  }
  CHECK(std::abs(std::log(r0) - best_ln) < 1.1e-3);
  CHECK(q_obj(std::log(r0), p) <= best_val + 1e-15);
}

TEST_CASE("stronger HRS prior pulls the threshold down") {
  DeviceParams p = params_with_r(10.0);
  double prev = std::exp(p.mu_h);
  for (double q : {0.5, 0.7, 0.9, 0.99}) {
    p.q_prior = q;
    const double r0 = naive_threshold(p);
    CHECK(r0 < prev);
    prev = r0;
  }
}

TEST_CASE("per-cell thresholds shift by the accumulated resistance") {
  const DeviceParams p0 = params_with_r(0.0);
  CHECK(dtec_threshold({7, 3}, 1e5, p0) == doctest::Approx(1e5));
  const DeviceParams p = params_with_r(10.0);
  CHECK(dtec_threshold({1024, 1024}, 1e5, p) == doctest::Approx(120480.0));
}

TEST_CASE("approximate array threshold equals the mean per-cell threshold") {
  const DeviceParams p = params_with_r(10.0);
  CHECK(stmc_approx({1, 1}, 1e5, p) ==
        doctest::Approx(dtec_threshold({1, 1}, 1e5, p)).epsilon(1e-15));
  CHECK(stmc_approx({1024, 1024}, 1e5, p) == doctest::Approx(110250.0));
  TestRng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    DeviceParams pr = params_with_r(0.0);
    pr.r_b = rng.uniform(1.0, 60.0);
    pr.r_w = rng.uniform(1.0, 60.0);
    const ArrayGeometry g{rng.uniform_int(1, 40), rng.uniform_int(1, 40)};
    double mean = 0.0;
    for (int i = 1; i <= g.rows; ++i) {
      for (int j = 1; j <= g.cols; ++j) {
        mean += dtec_threshold({i, j}, 1e5, pr);
      }
    }
    mean /= static_cast<double>(g.cell_count());
    CHECK(stmc_approx(g, 1e5, pr) == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("array solver degenerates to r_th0 without line resistance") {
  const StmcResult res = stmc_solve({64, 64}, 1e5, params_with_r(0.0));
  CHECK(res.r_th == doctest::Approx(1e5).epsilon(1e-15));
  CHECK(res.iterations == 1);
}

TEST_CASE("array solver agrees with a bisection oracle and brackets") {
  const DeviceParams p = params_with_r(30.0);
  const ArrayGeometry g{1024, 1024};
  const StmcResult res = stmc_solve(g, 1e5, p, 1e-6, 50);

  // bisection oracle on mean ln(R - acc) = ln(r_th0)
  auto mean_log = [&](double R) {
    double s = 0.0;
    for (int i = 1; i <= g.rows; ++i) {
      for (int j = 1; j <= g.cols; ++j) {
        s += std::log(R - accumulated_line_resistance({i, j}, p));
      }
    }
    return s / static_cast<double>(g.cell_count());
  };
  double lo = accumulated_line_resistance({g.rows, g.cols}, p) + 1e-3;
  double hi = 1e7;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_log(mid) < std::log(1e5) ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  CHECK(std::abs(res.r_th - root) < 1e-6 + 1e-9 * root);

  // alternating bracket with shrinking magnitudes from iterate 1 on,
  // checked above the floating-point noise floor
  REQUIRE(res.iterates.size() >= 4);
  const double noise_floor = 1e-4;
  double prev_gap = std::numeric_limits<double>::infinity();
  for (size_t l = 1; l + 1 < res.iterates.size(); ++l) {
    const double gap = res.iterates[l] - root;
    const double next_gap = res.iterates[l + 1] - root;
    if (std::abs(next_gap) < noise_floor) break;
    CHECK(gap * next_gap <= 0.0);
    CHECK(std::abs(gap) <= prev_gap);
    prev_gap = std::abs(gap);
  }
  CHECK(res.iterates[1] >= root);
}

TEST_CASE("array solver reports threshold-regime overflow") {
  // 4096*50*2 = 409600 accumulated vs r_th0 = 1e5
  CHECK_THROWS_AS(
      (void)stmc_solve({4096, 4096}, 1e5, params_with_r(50.0)),
      std::runtime_error);
}

TEST_CASE("column solver handles one bitline at a time") {
  const DeviceParams p = params_with_r(30.0);
  const ArrayGeometry g{256, 256};
  const StmcResult whole = stmc_solve(g, 1e5, p);
  const StmcResult first = stmc_solve_column(g, 1, 1e5, p);
  const StmcResult last = stmc_solve_column(g, 256, 1e5, p);
  CHECK(first.r_th < last.r_th);
  CHECK(first.r_th < whole.r_th);
  CHECK(last.r_th > whole.r_th);
}

TEST_CASE("plans evaluate their per-cell thresholds") {
  const DeviceParams p = params_with_r(30.0);
  const ArrayGeometry g{128, 128};
  const ThresholdPlan naive = make_threshold_plan(ThresholdKind::naive, g, p);
  const ThresholdPlan dtec = make_threshold_plan(ThresholdKind::dtec, g, p);
  const ThresholdPlan approx =
      make_threshold_plan(ThresholdKind::stmc_approx, g, p);
  const ThresholdPlan exact =
      make_threshold_plan(ThresholdKind::stmc_exact, g, p);
  const CellLocation loc{100, 3};
  CHECK(naive.threshold_at(loc, p) == doctest::Approx(naive.r_th0));
  CHECK(dtec.threshold_at(loc, p) ==
        doctest::Approx(naive.r_th0 + accumulated_line_resistance(loc, p)));
  CHECK(approx.threshold_at(loc, p) > naive.r_th0);
  CHECK(exact.threshold_at(loc, p) > naive.r_th0);
}

TEST_CASE("per-cell compensation is size and resistance independent") {
  const double base = avg_read_ber(
      {4, 4}, make_threshold_plan(ThresholdKind::dtec, {4, 4},
                                  params_with_r(10.0)),
      params_with_r(10.0));
  // equals the zero-resistance naive error rate exactly
  const DeviceParams p0 = params_with_r(0.0);
  const double zero_line = avg_read_ber(
      {4, 4}, make_threshold_plan(ThresholdKind::naive, {4, 4}, p0), p0);
  CHECK(base == doctest::Approx(zero_line).epsilon(1e-12));
  for (double r : {20.0, 50.0}) {
    for (int size : {64, 256}) {
      const DeviceParams p = params_with_r(r);
      const ArrayGeometry g{size, size};
      const double v =
          avg_read_ber(g, make_threshold_plan(ThresholdKind::dtec, g, p), p);
      CHECK(v == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("scheme ordering on a mid-size array") {
  const DeviceParams p = params_with_r(30.0);
  const ArrayGeometry g{256, 256};
  const double naive =
      avg_read_ber(g, make_threshold_plan(ThresholdKind::naive, g, p), p);
  const double approx =
      avg_read_ber(g, make_threshold_plan(ThresholdKind::stmc_approx, g, p), p);
  const double exact =
      avg_read_ber(g, make_threshold_plan(ThresholdKind::stmc_exact, g, p), p);
  CHECK(exact <= naive + 1e-12);
  CHECK(std::abs(exact - approx) / exact < 0.01);
}

TEST_CASE("all schemes coincide without line resistance") {
  const DeviceParams p = params_with_r(0.0);
  const ArrayGeometry g{32, 32};
  const double naive =
      avg_read_ber(g, make_threshold_plan(ThresholdKind::naive, g, p), p);
  for (ThresholdKind k : {ThresholdKind::dtec, ThresholdKind::stmc_approx,
                          ThresholdKind::stmc_exact}) {
    CHECK(avg_read_ber(g, make_threshold_plan(k, g, p), p) ==
          doctest::Approx(naive).epsilon(1e-14));
  }
}

// With both Q arguments positive, Q is convex there, so the
// log-averaged substitute objective sits just below the true average;
// the substitution is useful because the gap is tiny in this regime.
TEST_CASE("substituted objective is a tight lower bound on the average") {
  TestRng rng(88);
  int checked = 0;
  while (checked < 100) {
    DeviceParams p = params_with_r(rng.uniform(1.0, 50.0));
    p.q_prior = rng.uniform(0.2, 0.8);
    const ArrayGeometry g{rng.uniform_int(2, 24), rng.uniform_int(2, 24)};
    const double R = naive_threshold(p) + rng.uniform(0.0, 20000.0);
    // stay in the regime where both Q arguments are positive
    const double worst_acc =
        accumulated_line_resistance({g.rows, g.cols}, p);
    if (R - worst_acc <= std::exp(p.mu_l) || R >= std::exp(p.mu_h)) continue;
    double avg = 0.0, mean_ln = 0.0;
    for (int i = 1; i <= g.rows; ++i) {
      for (int j = 1; j <= g.cols; ++j) {
        const double arg = R - accumulated_line_resistance({i, j}, p);
        avg += q_obj(std::log(arg), p);
        mean_ln += std::log(arg);
      }
    }
    avg /= static_cast<double>(g.cell_count());
    mean_ln /= static_cast<double>(g.cell_count());
    const double substituted = q_obj(mean_ln, p);
    CHECK(substituted <= avg + 1e-15);
    CHECK(avg - substituted <= 0.05 * avg);
    ++checked;
  }
}
