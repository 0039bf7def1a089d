#pragma once

#include <cstdint>
#include <random>

namespace pwm {

// Seeded random stream with hand-rolled samplers on top of the raw
// mt19937_64 output. std::random distributions are implementation
// defined, which would break the bit-reproducibility contract across
// standard libraries; everything here draws through uniform() only.
//
// Sub-streams are derived from (seed, tag...) with a splitmix64 mix so
// that per-question chains produce identical results whether they run
// serially or in parallel.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  // Child stream keyed by one or more tags. child(a, b) != child(b, a).
  template <typename... Tags>
  Rng child(Tags... tags) const {
    std::uint64_t s = seed_;
    ((s = mix(s ^ mix(static_cast<std::uint64_t>(tags)))), ...);
    return Rng(s);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns an endpoint, so
  // inverse-CDF transforms stay finite.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return engine_() % n;  // bias negligible for n << 2^64
  }

  double normal();
  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Gamma with shape >= 1 via Marsaglia-Tsang squeeze.
  double gamma(double shape, double rate);

  // Inverse-CDF draw from Normal(mu, sigma) truncated to [lo, hi].
  double trunc_normal(double mu, double sigma, double lo, double hi);

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pwm
