#include "xbarchan/math.hpp"

#include <cmath>
#include <stdexcept>

namespace xbar {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");
  }
  // Wichura, Algorithm AS 241, PPND16.
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

double lognormal_cdf(double x, double mu, double sigma) {
  if (sigma <= 0.0) {
    throw std::domain_error("lognormal_cdf: sigma must be positive");
  }
  if (x <= 0.0) return 0.0;
  return normal_cdf((std::log(x) - mu) / sigma);
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace {

// Composite Simpson over [-9, 9] against the standard normal density.
double simpson_normal(const std::function<double(double)>& f, int intervals) {
  constexpr double kLim = 9.0;
  constexpr double kInvSqrt2Pi = 0.3989422804014327;
  const double h = 2.0 * kLim / intervals;
  auto g = [&](double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u) * f(u); };
  double sum = g(-kLim) + g(kLim);
  for (int k = 1; k < intervals; ++k) {
    sum += g(-kLim + k * h) * ((k % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

double normal_expectation(const std::function<double(double)>& f,
                          double abs_tol) {
  int n = 64;
  double prev = simpson_normal(f, n);
  constexpr int kMaxIntervals = 1 << 21;
  while (n < kMaxIntervals) {
    n *= 2;
    const double cur = simpson_normal(f, n);
    if (std::abs(cur - prev) < abs_tol) return cur;
    prev = cur;
  }
  throw std::runtime_error("normal_expectation: quadrature did not converge");
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double x_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace xbar
