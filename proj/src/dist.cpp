#include "pwm/dist.hpp"

#include <cmath>

namespace pwm {

namespace {

// Acklam coefficients for the rational initial guess.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

double acklam(double p) {
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) return -acklam(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

}  // namespace

double norm_quantile(double p) {
  if (p <= 0.0) return kNegInf;
  if (p >= 1.0) return kPosInf;
  double x = acklam(p);
  // One Halley refinement against the exact CDF.
  const double e = norm_cdf(x) - p;
  const double u = e * std::exp(0.5 * x * x + 0.9189385332046727417803297);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

double norm_log_mass(double a, double b) {
  if (a > b) return kNegInf;
  // Reflect so the computation happens in the lower tail, where
  // Phi(b) - Phi(a) = Phi(-a) - Phi(-b) loses no precision.
  if (a + b > 0.0) {
    const double t = a;
    a = -b;
    b = -t;
  }
  const double cb = norm_cdf(b);
  const double ca = norm_cdf(a);
  const double diff = cb - ca;
  if (diff > 0.0) return std::log(diff);
  // Both endpoints deep in the same tail; fall back to the asymptotic
  // log Phi and expm1 form.
  const double log_cb = std::log(cb);
  const double log_ca = std::log(ca);
  if (log_ca == kNegInf) return log_cb;
  return log_cb + std::log1p(-std::exp(log_ca - log_cb));
}

double truncnorm_logpdf(double x, double mu, double sigma, double lo, double hi) {
  if (x < lo || x > hi) return kNegInf;
  if (sigma <= 0.0) return x == mu ? kPosInf : kNegInf;
  const double z = (x - mu) / sigma;
  return norm_logpdf(z) - std::log(sigma) - truncnorm_log_mass(mu, sigma, lo, hi);
}

}  // namespace pwm
