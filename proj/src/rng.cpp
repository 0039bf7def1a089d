#include "pwm/rng.hpp"

#include <cmath>

#include "pwm/dist.hpp"

namespace pwm {

double Rng::normal() { return norm_quantile(uniform()); }

double Rng::gamma(double shape, double rate) {
  // Marsaglia-Tsang (2000); requires shape >= 1, which covers every
  // prior used here.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return d * v / rate;
    }
  }
}

double Rng::trunc_normal(double mu, double sigma, double lo, double hi) {
  if (sigma <= 0.0) return mu;
  const double a = norm_cdf((lo - mu) / sigma);
  const double b = norm_cdf((hi - mu) / sigma);
  const double u = a + (b - a) * uniform();
  const double x = mu + sigma * norm_quantile(u);
  // Quantile round-off can land a hair outside the interval.
  return x < lo ? lo : (x > hi ? hi : x);
}

}  // namespace pwm
