#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "xbarchan/circuit.hpp"
#include "xbarchan/write_channel.hpp"

using namespace xbar;
using testsupport::params_with_r;
using testsupport::TestRng;

namespace {

// scalar oracle composed from raw library-independent pieces
double oracle_fail_given_r(double r_prev, double acc, double v_w, double alpha,
                           double beta, double sigma, double t_pulse) {
  const double v = v_w * r_prev / (r_prev + acc);
  const double ln_tau = alpha * v + beta;
  const double z = (std::log(t_pulse) - ln_tau) / sigma;
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

// Monte Carlo marginalization oracle over the previous-state resistance
double mc_marginal_fail(const CellLocation& loc, const DeviceParams& p,
                        SwitchOp kind, long long draws, uint64_t seed,
                        double* se_out) {
  TestRng rng(seed);
  const double mu = kind == SwitchOp::set ? p.mu_h : p.mu_l;
  const double sg = kind == SwitchOp::set ? p.sigma_h : p.sigma_l;
  const double acc = accumulated_line_resistance(loc, p);
  const double v_w = kind == SwitchOp::set ? p.v_w_set : p.v_w_reset;
  const double alpha = kind == SwitchOp::set ? p.alpha_set : p.alpha_reset;
  const double beta = kind == SwitchOp::set ? p.beta_set : p.beta_reset;
  const double sig_t = kind == SwitchOp::set ? p.sigma_set : p.sigma_reset;
  const double t_pulse = kind == SwitchOp::set ? p.t_set : p.t_reset;
  double sum = 0.0, sumsq = 0.0;
  for (long long i = 0; i < draws; ++i) {
    const double r = std::exp(mu + sg * rng.normal());
    const double f =
        oracle_fail_given_r(r, acc, v_w, alpha, beta, sig_t, t_pulse);
    sum += f;
    sumsq += f * f;
  }
  const double mean = sum / draws;
  if (se_out) {
    const double var = sumsq / draws - mean * mean;
    *se_out = std::sqrt(std::max(var, 0.0) / draws);
  }
  return mean;
}

}  // namespace

TEST_CASE("conditional switching probability composes Q with the divider") {
  const DeviceParams p = params_with_r(10.0);
  const CellLocation worst{1024, 1024};
  const double fail = 1.0 - switch_success_given_r(
                                1e4, worst, SwitchingModel::for_reset(p),
                                SwitchOp::reset, p);
  CHECK(fail == doctest::Approx(oracle_fail_given_r(
                    1e4, 20480.0, 5.0, -0.25, 4.25, 0.5, 100.0))
                    .epsilon(1e-12));
  CHECK(fail == doctest::Approx(6.294e-2).epsilon(1e-3));
}

TEST_CASE("degenerate switching-time spread becomes a step") {
  DeviceParams p = params_with_r(0.0);
  p.sigma_set = 1e-9;
  // tau_set at full -5V bias is ~20.1us << 100us pulse
  const double s = switch_success_given_r(
      1e6, {1, 1}, SwitchingModel::for_set(p), SwitchOp::set, p);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero line resistance medians match at both polarities") {
  const DeviceParams p = params_with_r(0.0);
  // ln(tau) = 0.25*(-5) + 4.25 = 3, tau = e^3 = 20.09us for set;
  // the reset coefficients mirror it at +5V
  const double ln_tau_set = p.alpha_set * p.v_w_set + p.beta_set;
  const double ln_tau_reset = p.alpha_reset * p.v_w_reset + p.beta_reset;
  CHECK(ln_tau_set == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ln_tau_reset == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::exp(ln_tau_set) == doctest::Approx(20.0855).epsilon(1e-4));
  const double s_set = switch_success_given_r(
      5e5, {3, 7}, SwitchingModel::for_set(p), SwitchOp::set, p);
  const double s_reset = switch_success_given_r(
      5e5, {3, 7}, SwitchingModel::for_reset(p), SwitchOp::reset, p);
  CHECK(s_set == doctest::Approx(s_reset).epsilon(1e-14));
}

TEST_CASE("marginal failure probabilities against frozen quadrature values") {
  const DeviceParams p = params_with_r(10.0);
  // best cell of a 1024x1024 array
  CHECK(set_failure_prob({1, 1}, p) ==
        doctest::Approx(6.6303581853495342e-4).epsilon(1e-9));
  CHECK(reset_failure_prob({1024, 1024}, p) ==
        doctest::Approx(6.933426420971195e-2).epsilon(1e-9));
}

TEST_CASE("marginal failure matches a large Monte Carlo oracle") {
  const DeviceParams p = params_with_r(10.0);
  double se = 0.0;
  const double mc =
      mc_marginal_fail({1, 1}, p, SwitchOp::set, 100'000'000, 99, &se);
  const double quad = set_failure_prob({1, 1}, p);
  CHECK(std::abs(quad - mc) < 3.0 * se);
}

TEST_CASE("degenerate state spread reduces to the point-mass value") {
  DeviceParams p = params_with_r(10.0);
  p.sigma_h = 1e-9;
  const CellLocation loc{64, 64};
  const double expected =
      1.0 - switch_success_given_r(std::exp(p.mu_h), loc,
                                   SwitchingModel::for_set(p), SwitchOp::set,
                                   p);
  CHECK(set_failure_prob(loc, p) == doctest::Approx(expected).epsilon(1e-9));
  DeviceParams pl = params_with_r(10.0);
  pl.sigma_l = 1e-9;
  const double expected_l =
      1.0 - switch_success_given_r(std::exp(pl.mu_l), loc,
                                   SwitchingModel::for_reset(pl),
                                   SwitchOp::reset, pl);
  CHECK(reset_failure_prob(loc, pl) ==
        doctest::Approx(expected_l).epsilon(1e-9));
}

TEST_CASE("voltage-independent median is location independent") {
  DeviceParams p = params_with_r(40.0);
  p.alpha_set = 0.0;
  const double a = set_failure_prob({1, 1}, p);
  const double b = set_failure_prob({317, 25}, p);
  const double c = set_failure_prob({1024, 1024}, p);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(a == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("zero line resistance is the best reset case") {
  const double base = reset_failure_prob({5, 5}, params_with_r(0.0));
  for (double r : {5.0, 20.0, 60.0}) {
    CHECK(reset_failure_prob({5, 5}, params_with_r(r)) >= base);
  }
}

TEST_CASE("failure probabilities grow along rows and columns") {
  const DeviceParams p = params_with_r(30.0);
  double prev_set = -1.0, prev_reset = -1.0;
  for (int d = 1; d <= 1024; d *= 4) {
    const double sf = set_failure_prob({d, 17}, p);
    const double rf = reset_failure_prob({17, d}, p);
    CHECK(sf >= prev_set);
    CHECK(rf >= prev_reset);
    prev_set = sf;
    prev_reset = rf;
  }
}

TEST_CASE("quadrature tracks Monte Carlo across random parameter draws") {
  TestRng rng(20240);
  for (int draw = 0; draw < 5; ++draw) {
    DeviceParams p = params_with_r(rng.uniform(5.0, 80.0));
    p.mu_l = rng.uniform(8.0, 10.0);
    p.mu_h = p.mu_l + rng.uniform(2.0, 5.0);
    p.sigma_l = rng.uniform(0.3, 0.9);
    p.sigma_h = rng.uniform(0.3, 0.9);
    p.sigma_set = p.sigma_reset = rng.uniform(0.3, 0.8);
    p.beta_set = p.beta_reset = rng.uniform(3.5, 4.6);
    const CellLocation loc{rng.uniform_int(1, 512), rng.uniform_int(1, 512)};
    for (SwitchOp kind : {SwitchOp::set, SwitchOp::reset}) {
      double se = 0.0;
      const double mc = mc_marginal_fail(loc, p, kind, 1'000'000,
                                         1000 + draw, &se);
      const double quad = kind == SwitchOp::set ? set_failure_prob(loc, p)
                                                : reset_failure_prob(loc, p);
      CHECK(std::abs(quad - mc) < 4.0 * se + 1e-12);
    }
  }
}

TEST_CASE("write channel prefactors and error rate") {
  const DeviceParams p = params_with_r(10.0);
  const WriteChannelResult best = write_channel({1, 1}, p);
  CHECK(best.bac.p01 / best.reset_fail ==
        doctest::Approx(1.0 - p.q_prior).epsilon(1e-12));
  CHECK(best.bac.p10 / best.set_fail ==
        doctest::Approx(p.q_prior).epsilon(1e-12));

  // frozen pipeline values; the reported array margins fall within a
  // factor of two of these
  CHECK(write_ber(best, p.q_prior) ==
        doctest::Approx(3.3518646266e-4).epsilon(1e-6));
  const WriteChannelResult worst = write_channel({1024, 1024}, p);
  CHECK(write_ber(worst, p.q_prior) ==
        doctest::Approx(1.7541743443e-2).epsilon(1e-6));
  CHECK(write_ber(best, p.q_prior) > 3.35e-4 / 2.0);
  CHECK(write_ber(best, p.q_prior) < 3.35e-4 * 2.0);
  CHECK(write_ber(worst, p.q_prior) > 1.75e-2 / 2.0);
  CHECK(write_ber(worst, p.q_prior) < 1.75e-2 * 2.0);
}

TEST_CASE("always-HRS prior removes reset crossovers") {
  const DeviceParams p = params_with_r(10.0);
  const WriteChannelResult w = write_channel({8, 8}, p, 1.0);
  CHECK(w.bac.p01 == 0.0);
  CHECK(w.bac.p10 == doctest::Approx(w.set_fail).epsilon(1e-15));
}
