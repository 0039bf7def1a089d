#pragma once

#include <cmath>
#include <limits>

namespace pwm {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Standard normal CDF.
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

// log(standard normal pdf).
inline double norm_logpdf(double z) {
  return -0.5 * z * z - 0.9189385332046727417803297;  // log sqrt(2 pi)
}

// Standard normal quantile (Acklam's rational approximation polished
// with one Halley step); accurate to ~1e-15 over (0, 1).
double norm_quantile(double p);

// log(Phi(b) - Phi(a)) for a < b, computed against the nearer tail so
// the difference keeps precision when both endpoints sit far out.
double norm_log_mass(double a, double b);

// Normal(mu, sigma) truncated to [lo, hi] and renormalized.
// sigma == 0 degenerates to a point mass at mu: logpdf is -inf away
// from mu and +inf at it (never NaN).
double truncnorm_logpdf(double x, double mu, double sigma, double lo, double hi);

// log of the in-[lo, hi] normal mass; the Hastings correction for a
// truncated-normal random walk is log_mass(current) - log_mass(proposal).
inline double truncnorm_log_mass(double mu, double sigma, double lo, double hi) {
  return norm_log_mass((lo - mu) / sigma, (hi - mu) / sigma);
}

// log Gamma(shape, rate) density.
inline double gamma_logpdf(double x, double shape, double rate) {
  if (x <= 0.0) return kNegInf;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

inline double logsumexp2(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a == kPosInf || b == kPosInf) return kPosInf;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(std::abs(a - b))));
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

inline double clamp01(double x, double eps) {
  if (x < eps) return eps;
  if (x > 1.0 - eps) return 1.0 - eps;
  return x;
}

}  // namespace pwm
