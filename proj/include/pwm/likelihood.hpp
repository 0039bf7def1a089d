#pragma once

#include "pwm/dataset.hpp"
#include "pwm/generator.hpp"
#include "pwm/respondent.hpp"
#include "pwm/types.hpp"

namespace pwm {

// One question's responses, as contiguous per-respondent vectors.
struct QuestionData {
  VoteVector votes;             // {0, 1, kMissingVote}
  Eigen::VectorXd predictions;  // NaN = missing
  Eigen::VectorXd confidences;  // size 0 when the channel is absent

  static QuestionData slice(const ResponseDataset& ds, Index q);
  Index n() const { return votes.size(); }
  Index n_votes() const;
};

struct LikelihoodFlags {
  bool use_confidences = false;
  bool expertise_aware = false;
};

// Respondent-side quantities that do not vary across respondents when
// nobody conditions on their own expertise. Computing this once per
// state keeps the marginalized likelihood O(N) with small constants.
struct StateBlock {
  double post_a[2];     // P(world A | signal), indexed by Signal
  double pred_mean[2];  // predicted fraction voting A
  double log_vote_a[2];
  double log_vote_b[2];
  double log_sig_zero[2];   // log P(signal | world) at zero expertise
  double pred_norm[2];      // -log sd - log trunc mass, by signal
  double conf_mean[2][2];   // [signal][vote]
  double conf_norm[2][2];
  double inv_pred_sd = 0.0;
  double inv_conf_sd = 0.0;
  bool pred_degenerate = false;  // pred_var == 0
  bool conf_degenerate = false;
};

StateBlock make_state_block(const QuestionParams& state, const LikelihoodFlags& flags);

// log sum over the two signals of the respondent's factor product:
// P(signal | world, expertise) * P(vote | signal) * f(prediction |
// signal) * [f(confidence | signal)]. Missing prediction/confidence
// factors drop out; a missing vote contributes log 1.
double respondent_log_term(const QuestionParams& state, const StateBlock& block,
                           std::int8_t vote, double prediction, double confidence,
                           double expertise, const LikelihoodFlags& flags);

// Marginalized log-likelihood of one question's data. Returns -inf for
// zero-density states and never NaN.
double log_likelihood_question(const QuestionParams& state, const QuestionData& data,
                               const Eigen::VectorXd& expertise,
                               const LikelihoodFlags& flags);

// Log prior over the question state: uniform psi, the world's
// Bernoulli(psi) mass, the triangle indicator on the signal matrix,
// Gamma(3, 3) on the vote temperature and uniform noise variances.
// Flat factors enter only through their domain indicators.
double log_prior_question(const QuestionParams& state, bool with_confidence);

}  // namespace pwm
