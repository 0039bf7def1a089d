#include "pwm/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "pwm/dist.hpp"

namespace pwm {

namespace {

double mean_of(const std::vector<double>& x, std::size_t begin, std::size_t len) {
  double s = 0.0;
  for (std::size_t i = begin; i < begin + len; ++i) s += x[i];
  return s / static_cast<double>(len);
}

double variance_of(const std::vector<double>& x, double mean) {
  if (x.size() < 2) return 0.0;
  double s = 0.0;
  for (const double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size() - 1);
}

// Spectral density at frequency zero for the window starting at
// `begin`, Bartlett kernel with sqrt-length truncation.
double spectral_density0(const std::vector<double>& x, std::size_t begin, std::size_t len) {
  const double m = mean_of(x, begin, len);
  const auto lag_max = static_cast<std::size_t>(std::sqrt(static_cast<double>(len)));
  double s = 0.0;
  for (std::size_t lag = 0; lag <= lag_max; ++lag) {
    double gamma = 0.0;
    for (std::size_t i = begin; i + lag < begin + len; ++i)
      gamma += (x[i] - m) * (x[i + lag] - m);
    gamma /= static_cast<double>(len);
    const double w = 1.0 - static_cast<double>(lag) / static_cast<double>(lag_max + 1);
    s += lag == 0 ? gamma : 2.0 * w * gamma;
  }
  return s > 0.0 ? s : 0.0;
}

}  // namespace

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
  const std::size_t m = chains.size();
  if (m < 2) throw std::invalid_argument("gelman_rubin: needs at least 2 chains");
  const std::size_t n = chains[0].size();
  if (n < 10) throw std::invalid_argument("gelman_rubin: chains too short");
  for (const auto& c : chains)
    if (c.size() != n) throw std::invalid_argument("gelman_rubin: unequal chain lengths");

  double w = 0.0;
  std::vector<double> means;
  means.reserve(m);
  for (const auto& c : chains) {
    const double mu = mean_of(c, 0, n);
    means.push_back(mu);
    w += variance_of(c, mu);
  }
  w /= static_cast<double>(m);

  const double grand = mean_of(means, 0, m);
  double b_over_n = 0.0;
  for (const double mu : means) b_over_n += (mu - grand) * (mu - grand);
  b_over_n /= static_cast<double>(m - 1);

  if (w <= 0.0) return b_over_n <= 0.0 ? 1.0 : kPosInf;
  const double v = w + (1.0 + 1.0 / static_cast<double>(m)) * b_over_n;
  return std::sqrt(v / w);
}

double geweke_z(const std::vector<double>& series, double first_frac, double last_frac) {
  const std::size_t n = series.size();
  const auto n1 = static_cast<std::size_t>(static_cast<double>(n) * first_frac);
  const auto n2 = static_cast<std::size_t>(static_cast<double>(n) * last_frac);
  if (n1 < 2 || n2 < 2 || n1 + n2 > n)
    throw std::invalid_argument("geweke_z: series too short for the requested windows");

  const double m1 = mean_of(series, 0, n1);
  const double m2 = mean_of(series, n - n2, n2);
  const double s1 = spectral_density0(series, 0, n1);
  const double s2 = spectral_density0(series, n - n2, n2);
  const double se2 = s1 / static_cast<double>(n1) + s2 / static_cast<double>(n2);
  const double diff = m1 - m2;
  if (se2 <= 0.0) return diff == 0.0 ? 0.0 : (diff > 0.0 ? kPosInf : kNegInf);
  return diff / std::sqrt(se2);
}

}  // namespace pwm
