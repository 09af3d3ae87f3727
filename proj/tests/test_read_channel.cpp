#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "xbarchan/circuit.hpp"
#include "xbarchan/read_channel.hpp"

using namespace xbar;
using testsupport::params_with_r;

TEST_CASE("threshold detector boundary goes to HRS") {
  const double i_th = 30e-6;
  CHECK(threshold_detect(i_th, i_th) == 0);
  CHECK(threshold_detect(2 * i_th, i_th) == 1);
  CHECK(threshold_detect(0.0, i_th) == 0);
}

TEST_CASE("worst-cell crossovers against the scalar oracle") {
  const DeviceParams p = params_with_r(10.0);
  const ReadChannelResult r = read_channel({1024, 1024}, 1e5, p);
  // oracle: Q evaluated from raw erfc on the shifted threshold
  const double arg = 1e5 - 20480.0;
  auto q = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
  CHECK(r.bac.p01 ==
        doctest::Approx(q((p.mu_h - std::log(arg)) / p.sigma_h)).epsilon(1e-13));
  CHECK(r.bac.p10 ==
        doctest::Approx(q((std::log(arg) - p.mu_l) / p.sigma_l)).epsilon(1e-13));
  CHECK(r.bac.p10 == doctest::Approx(1.3428774173e-3).epsilon(1e-6));
  CHECK(r.bac.p01 == doctest::Approx(1.2363123807e-4).epsilon(1e-6));
}

TEST_CASE("threshold swallowed by line resistance") {
  const DeviceParams p = params_with_r(10.0);
  // accumulated resistance 20480 >= r_th
  const ReadChannelResult r = read_channel({1024, 1024}, 2e4, p);
  CHECK(r.bac.p10 == 1.0);
  CHECK(r.bac.p01 == 0.0);
}

TEST_CASE("geometric-mean threshold balances symmetric states") {
  const DeviceParams p = params_with_r(0.0);
  const double r_th = std::exp(0.5 * (p.mu_l + p.mu_h));
  const ReadChannelResult r = read_channel({40, 40}, r_th, p);
  CHECK(r.bac.p01 == doctest::Approx(r.bac.p10).epsilon(1e-12));
}

TEST_CASE("line shift is equivalent to a shifted threshold") {
  const DeviceParams p = params_with_r(35.0);
  const DeviceParams p0 = params_with_r(0.0);
  for (const CellLocation loc : {CellLocation{3, 9}, CellLocation{512, 700},
                                 CellLocation{1024, 1024}}) {
    const double acc = accumulated_line_resistance(loc, p);
    const ReadChannelResult shifted = read_channel(loc, 1e5, p);
    const ReadChannelResult base = read_channel(loc, 1e5 - acc, p0);
    CHECK(shifted.bac.p01 == doctest::Approx(base.bac.p01).epsilon(1e-15));
    CHECK(shifted.bac.p10 == doctest::Approx(base.bac.p10).epsilon(1e-15));
  }
}

TEST_CASE("crossovers move monotonically with accumulated resistance") {
  const DeviceParams p = params_with_r(20.0);
  double prev_p4 = -1.0, prev_p3 = 2.0;
  for (int d = 1; d <= 2048; d *= 2) {
    const ReadChannelResult r = read_channel({d, d}, 1e5, p);
    CHECK(r.bac.p10 >= prev_p4);
    CHECK(r.bac.p01 <= prev_p3);
    prev_p4 = r.bac.p10;
    prev_p3 = r.bac.p01;
  }
}

TEST_CASE("rejects nonpositive threshold") {
  CHECK_THROWS_AS((void)read_channel({1, 1}, 0.0, params_with_r(1.0)),
                  std::invalid_argument);
}
