#pragma once

#include <functional>

namespace xbar {

/// Gaussian upper-tail probability Q(x) = P(N(0,1) > x).
/// Relative accuracy better than 1e-10 over |x| <= 8.
double q_function(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF (Wichura's PPND16), accurate to ~1e-15
/// for p in (0,1). Throws std::domain_error outside (0,1).
double inverse_normal_cdf(double p);

/// CDF of a log-normal with location mu and scale sigma (natural log
/// domain). Returns 0 for x <= 0.
double lognormal_cdf(double x, double mu, double sigma);

/// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double p);

/// E[f(U)] for U ~ N(0,1), by composite Simpson quadrature on [-9, 9]
/// with node doubling until successive estimates differ by less than
/// abs_tol. Throws std::runtime_error if the node cap is reached before
/// convergence.
double normal_expectation(const std::function<double(double)>& f,
                          double abs_tol = 1e-12);

/// Minimize a unimodal scalar function on [lo, hi] by golden-section
/// search until the bracket is narrower than x_tol. Returns argmin.
double golden_section_min(const std::function<double(double)>& f,
                          double lo, double hi, double x_tol);

}  // namespace xbar
