#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwm/dataset.hpp"
#include "pwm/generator.hpp"
#include "pwm/likelihood.hpp"
#include "pwm/types.hpp"

namespace pwm {

// Random-walk standard deviations per parameter family, tuned for
// 20-60% acceptance on study-sized synthetic data.
struct ProposalSds {
  double psi = 0.05;
  double signal = 0.05;
  double vote_noise = 0.2;
  double pred_noise = 0.05;
  double conf_noise = 0.05;
  double expertise = 0.05;
};

// Loop schedule for inference across questions: per-question blocks of
// question_steps sweeps with expertise frozen, then respondent_steps
// sweeps over the expertise vector with question states frozen. Whole
// loops are discarded as burn-in.
struct MultiSchedule {
  int n_loops = 100;
  int burnin_loops = 10;
  int question_steps = 2000;
  int respondent_steps = 150;
};

struct ChainConfig {
  long n_steps = 50000;  // single-question sweeps per chain
  long n_burnin = 5000;
  int n_chains = 4;
  int thin = 10;  // record every thin-th post-burn-in sweep
  std::uint64_t seed = 0;
  bool use_confidences = false;
  bool expertise_aware = false;
  ProposalSds proposal_sds;
  MultiSchedule multi;
  int threads = 0;  // 0 = hardware concurrency
  // Replica-exchange rungs for single-question chains. 1 keeps the
  // plain kernel; sharp low-noise data can trap the random walk in a
  // dominated mode, and a few tempered rungs (geometric ladder with
  // temp_ratio) restore mixing. Multi-question blocks always run at
  // full sharpness.
  int n_temps = 1;
  double temp_ratio = 0.4;
  // Pins a noise parameter instead of sampling it (oracle comparisons,
  // noiseless studies).
  std::optional<double> fixed_vote_noise;
  std::optional<double> fixed_pred_noise;
  std::optional<double> fixed_conf_noise;
};

// Thinned post-burn-in samples of one scalar, one vector per chain.
struct ScalarSamples {
  std::vector<std::vector<double>> chains;
};

struct QuestionTrace {
  ScalarSamples psi, s_a, s_b, vote_noise, pred_noise, conf_noise, world;
  double accept_continuous = 0.0;
  double accept_world = 0.0;
};

struct Trace {
  std::vector<QuestionTrace> questions;
  std::vector<ScalarSamples> expertise;  // per respondent; empty in single mode
  double accept_expertise = 0.0;
};

struct ScalarSummary {
  double mean = 0.0;
  double lo90 = 0.0;
  double hi90 = 0.0;
  double rhat = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> geweke_z;  // one entry per chain
};

// Mean, central 90% interval and convergence diagnostics from per-chain
// sample series. rhat stays NaN below 2 chains or 10 samples; Geweke
// scores are emitted for chains of at least 40 samples.
ScalarSummary summarize_samples(const std::vector<std::vector<double>>& chains);

struct QuestionSummary {
  std::string id;
  double prob_a = 0.5;  // posterior mean of the world-A indicator
  ScalarSummary psi, s_a, s_b, vote_noise, pred_noise, conf_noise;
  bool has_conf_noise = false;
  double accept_continuous = 0.0;
  double accept_world = 0.0;
};

struct PosteriorSummary {
  std::vector<QuestionSummary> questions;
  Eigen::VectorXd expertise_mean;         // exact post-burn-in means, size N or 0
  std::vector<ScalarSummary> expertise;   // per-respondent summaries
  double accept_expertise = 0.0;
};

// Metropolis-Hastings over one question's parameters with expertise
// fixed at zero. Each sweep updates every free continuous parameter
// through a domain-truncated normal random walk (with the exact
// Hastings correction) and proposes the opposite world state.
// stream_tag keys the random sub-streams so callers running many
// questions stay reproducible question by question.
std::pair<PosteriorSummary, Trace> run_single_question(const QuestionData& data,
                                                       const ChainConfig& cfg,
                                                       std::uint64_t stream_tag = 0,
                                                       const std::string& question_id = "q0");

// Single-question inference applied independently to every question of
// a study.
std::pair<PosteriorSummary, Trace> run_single_over_study(const ResponseDataset& ds,
                                                         const ChainConfig& cfg);

// Blocked inference across questions with per-respondent information
// expertise. Question blocks are conditionally independent given the
// expertise snapshot and run in parallel; respondent sweeps run against
// the frozen end-of-block question states.
std::pair<PosteriorSummary, Trace> run_multi_question(const ResponseDataset& ds,
                                                      const ChainConfig& cfg);

}  // namespace pwm
