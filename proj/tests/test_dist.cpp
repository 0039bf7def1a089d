#include <doctest.h>

#include <cmath>

#include "pwm/dist.hpp"
#include "pwm/rng.hpp"

using namespace pwm;

TEST_CASE("normal quantile inverts the cdf") {
  for (double p : {1e-12, 1e-6, 0.02, 0.3, 0.5, 0.7, 0.975, 1.0 - 1e-9}) {
    const double z = norm_quantile(p);
    CHECK(norm_cdf(z) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK(norm_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("norm_log_mass matches direct subtraction and stays finite in tails") {
  CHECK(norm_log_mass(-1.0, 1.0) == doctest::Approx(std::log(norm_cdf(1.0) - norm_cdf(-1.0))));
  // Deep upper tail: direct subtraction would cancel to zero.
  const double lm = norm_log_mass(38.0, 40.0);
  CHECK(std::isfinite(lm));
  CHECK(lm < -700.0);
  // Symmetry of the interval mass.
  CHECK(norm_log_mass(0.25, 2.0) == doctest::Approx(norm_log_mass(-2.0, -0.25)).epsilon(1e-12));
}

TEST_CASE("truncated normal density integrates to one on [0,1]") {
  for (auto [mu, sigma] : {std::pair{0.3, 0.2}, {0.0, 0.05}, {0.9, 0.7}, {0.5, 0.02}}) {
    const int n = 20001;
    const double h = 1.0 / (n - 1);
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = i * h;
      const double simpson = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      integral += simpson * std::exp(truncnorm_logpdf(x, mu, sigma, 0.0, 1.0));
    }
    integral *= h / 3.0;
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("truncated normal density handles degenerate and out-of-support points") {
  CHECK(truncnorm_logpdf(1.2, 0.5, 0.1, 0.0, 1.0) == kNegInf);
  CHECK(truncnorm_logpdf(0.4, 0.4, 0.0, 0.0, 1.0) == kPosInf);
  CHECK(truncnorm_logpdf(0.3, 0.4, 0.0, 0.0, 1.0) == kNegInf);
}

TEST_CASE("logsumexp2 edge cases") {
  CHECK(logsumexp2(kNegInf, kNegInf) == kNegInf);
  CHECK(logsumexp2(kNegInf, 1.5) == doctest::Approx(1.5));
  CHECK(logsumexp2(std::log(0.3), std::log(0.2)) == doctest::Approx(std::log(0.5)));
  CHECK(logsumexp2(kPosInf, 1.0) == kPosInf);
}

TEST_CASE("rng streams are deterministic and children are independent of order") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng root(7);
  Rng c1 = root.child(1, 2);
  Rng c2 = root.child(2, 1);
  CHECK(c1.next_u64() != c2.next_u64());

  // Children do not depend on how much the parent has been consumed.
  Rng r1(9), r2(9);
  r2.uniform();
  CHECK(r1.child(5).next_u64() == r2.child(5).next_u64());
}

TEST_CASE("uniform stays inside the open interval") {
  Rng rng(123);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gamma(3,3) sampler has the right first two moments") {
  Rng rng(2024);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gamma(3.0, 3.0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.01));        // shape/rate
  CHECK(var == doctest::Approx(3.0 / 9.0).epsilon(0.03));   // shape/rate^2
}

TEST_CASE("truncated normal sampler matches its analytic cdf") {
  Rng rng(99);
  const double mu = 0.3, sigma = 0.25, lo = 0.0, hi = 1.0;
  const int n = 100000;
  int below_half = 0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.trunc_normal(mu, sigma, lo, hi);
    CHECK(x >= lo);
    CHECK(x <= hi);
    below_half += x < 0.5;
    sum += x;
  }
  const double za = (lo - mu) / sigma, zb = (hi - mu) / sigma;
  const double mass = norm_cdf(zb) - norm_cdf(za);
  const double p_half = (norm_cdf((0.5 - mu) / sigma) - norm_cdf(za)) / mass;
  CHECK(static_cast<double>(below_half) / n == doctest::Approx(p_half).epsilon(0.01));
  // Analytic mean of the truncated normal.
  const auto phi = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI); };
  const double analytic_mean = mu + sigma * (phi(za) - phi(zb)) / mass;
  CHECK(sum / n == doctest::Approx(analytic_mean).epsilon(0.005));
}
