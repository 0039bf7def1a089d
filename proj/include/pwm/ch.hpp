#pragma once

#include <cstdint>
#include <vector>

#include "pwm/dataset.hpp"
#include "pwm/inference.hpp"
#include "pwm/types.hpp"

namespace pwm {

// Linear-in-log-odds calibration: the probability a respondent with
// calibration delta perceives when the latent true probability is pi.
// Returned in log-odds; pi at an endpoint yields a signed infinity.
double ch_perceived(double pi, double delta);

struct ChConfig {
  int burnin = 2000;
  int iterations = 10000;
  int n_chains = 8;
  int thin = 1;
  std::uint64_t seed = 0;
  double proposal_sd = 0.1;
  double eps = 1e-4;  // clamp for converting reports to log-odds
  int threads = 0;
};

struct ChResult {
  std::vector<double> pi_mean;  // posterior mean latent probability per question
  Eigen::VectorXd delta_mean, sigma_mean;
  std::vector<ScalarSummary> pi, delta, sigma;
  double accept_rate = 0.0;
};

// Cognitive hierarchy model over signed probabilities (vote plus
// confidence). Reports enter in log-odds space: the observation
// x = logit(report) is Gaussian around delta_r * logit(pi_q) with
// variance 1/sigma_r^2. The source text centres the Gaussian on a
// log-odds quantity while treating the report as a probability; this
// implementation resolves the mismatch by modelling the report's
// log-odds, which keeps both sides on one scale.
// Priors: pi_q, sigma_r uniform on the unit interval, delta_r Beta(5,1).
ChResult run_ch(const ResponseDataset& ds, const ChConfig& cfg);

}  // namespace pwm
