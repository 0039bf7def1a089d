#pragma once

#include <cstdint>
#include <vector>

#include "pwm/dataset.hpp"
#include "pwm/inference.hpp"
#include "pwm/types.hpp"

namespace pwm {

// Bayesian Cultural Consensus state: a consensus answer per question,
// and Rasch ability / difficulty / guessing-bias parameters. Answer A
// plays the role of "true", so g is the bias toward voting A.
struct BccState {
  std::vector<std::int8_t> z;  // consensus answers in {0, 1}
  Eigen::VectorXd theta;       // respondent ability in [0, 1]
  Eigen::VectorXd delta;       // question difficulty in [0, 1]
  Eigen::VectorXd g;           // respondent guess bias in [0, 1]
};

// Rasch competence: probability the respondent knows the answer.
// Equals 0.5 whenever ability matches difficulty, including both
// degenerate corners.
double bcc_competence(double theta, double delta);

// Sum of Bernoulli log-masses of the non-missing votes under the
// know-or-guess process P(vote = A) = D z + (1 - D) g.
double bcc_log_likelihood(const BccState& state, const VoteMatrix& votes);

struct BccConfig {
  int burnin = 1000;
  int iterations = 10000;
  int n_chains = 6;
  int thin = 2;
  std::uint64_t seed = 0;
  double proposal_sd = 0.1;
  int threads = 0;
};

struct BccResult {
  std::vector<double> p_true;  // posterior P(Z_q = A)
  Eigen::VectorXd theta_mean, g_mean, delta_mean;
  std::vector<ScalarSummary> theta, delta, g;  // per-scalar diagnostics
  double accept_rate = 0.0;
};

// MH-within-Gibbs: exact conditional flips for Z, truncated-normal
// random walks for the continuous parameters, uniform priors
// throughout. Votes are the only channel used.
BccResult run_bcc(const ResponseDataset& ds, const BccConfig& cfg);

struct EigenratioResult {
  double ratio = 0.0;  // +inf when the second eigenvalue vanishes
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::MatrixXd agreement;
  std::vector<std::string> warnings;
};

// Unidimensionality heuristic: ratio of the two largest eigenvalues of
// the raw agreement matrix (fraction of co-answered questions with
// matching votes; pairs with none co-answered fall back to 0.5).
EigenratioResult agreement_eigenratio(const VoteMatrix& votes);

}  // namespace pwm
