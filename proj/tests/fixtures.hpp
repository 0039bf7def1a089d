#pragma once

// Shared synthetic fixtures for sampler tests and the acceptance suite.

#include <cmath>

#include "pwm/dataset.hpp"
#include "pwm/generator.hpp"
#include "pwm/likelihood.hpp"
#include "pwm/respondent.hpp"
#include "pwm/rng.hpp"

namespace pwm::fixtures {

// One majority-wrong question: world B with signal matrix (0.8, 0.7)
// and an even prior, so signal a (the wrong one) dominates. Signals are
// derandomized to exactly `a_count` a's out of n, votes are the ideal
// votes, and predictions sit at the exact posterior fractions plus
// truncated-normal jitter of variance pred_var.
inline QuestionData footnote_question(Index n, Index a_count, double pred_var, Rng& rng) {
  const SignalMatrix s{0.8, 0.7};
  const double psi = 0.5;
  QuestionData data;
  data.votes.resize(n);
  data.predictions.resize(n);
  const double sd = std::sqrt(pred_var);
  for (Index r = 0; r < n; ++r) {
    const Signal t = r < a_count ? Signal::a : Signal::b;
    data.votes[r] = static_cast<std::int8_t>(ideal_vote(t, s, psi));
    const double mean = predicted_vote_fraction(t, s, psi);
    data.predictions[r] = sd > 0.0 ? rng.trunc_normal(mean, sd, 0.0, 1.0) : mean;
  }
  return data;
}

// A study of `q_count` such questions (every key is B).
inline ResponseDataset footnote_study(Index q_count, Index n, Index a_count, double pred_var,
                                      std::uint64_t seed) {
  ResponseDataset ds;
  ds.votes.resize(q_count, n);
  ds.predictions.resize(q_count, n);
  Rng root(seed);
  for (Index q = 0; q < q_count; ++q) {
    Rng qr = root.child(static_cast<std::uint64_t>(q));
    const QuestionData data = footnote_question(n, a_count, pred_var, qr);
    ds.question_ids.push_back("q" + std::to_string(q));
    ds.votes.row(q) = data.votes.transpose();
    ds.predictions.row(q) = data.predictions.transpose();
    ds.answer_key.push_back(0);  // world B throughout
    ds.reversed.push_back(0);
  }
  return ds;
}

// Rasch competence, duplicated here so the fixture stays independent
// of the implementation under test.
inline double bcc_competence_fixture(double theta, double delta) {
  const double num = theta * (1.0 - delta);
  const double denom = num + delta * (1.0 - theta);
  return denom > 0.0 ? num / denom : 0.5;
}

// Know-or-guess study with a shared bias toward answer A: respondents
// know the key with probability driven by (theta, delta) and otherwise
// guess A with probability g. Predictions and confidences are coarse
// common-knowledge reports, so every channel the models need is
// present. Answer keys are balanced coin flips.
struct BiasedStudy {
  ResponseDataset ds;
  Eigen::VectorXd theta, g;
  Eigen::VectorXd delta;
};

inline BiasedStudy biased_study(Index q_count, Index n, std::uint64_t seed) {
  Rng rng(seed);
  BiasedStudy study;
  study.theta.resize(n);
  study.g.resize(n);
  study.delta.resize(q_count);
  for (Index r = 0; r < n; ++r) {
    study.theta[r] = rng.uniform(0.25, 0.6);
    study.g[r] = rng.uniform(0.8, 0.95);  // strong shared true-bias
  }
  for (Index q = 0; q < q_count; ++q) study.delta[q] = rng.uniform(0.35, 0.75);

  ResponseDataset& ds = study.ds;
  ds.votes.resize(q_count, n);
  ds.predictions.resize(q_count, n);
  ds.confidences.resize(q_count, n);
  const double mean_g = 0.875;
  for (Index q = 0; q < q_count; ++q) {
    ds.question_ids.push_back("q" + std::to_string(q));
    ds.reversed.push_back(0);
    const std::int8_t key = rng.bernoulli(0.5) ? 1 : 0;
    ds.answer_key.push_back(key);
    // Common-knowledge competence level for prediction reports.
    double mean_d = 0.0;
    for (Index r = 0; r < n; ++r)
      mean_d += bcc_competence_fixture(study.theta[r], study.delta[q]);
    mean_d /= static_cast<double>(n);
    for (Index r = 0; r < n; ++r) {
      const double d = bcc_competence_fixture(study.theta[r], study.delta[q]);
      const bool knows = rng.bernoulli(d);
      std::int8_t vote;
      if (knows) vote = key;
      else vote = rng.bernoulli(study.g[r]) ? 1 : 0;
      ds.votes(q, r) = vote;
      // Predict the A share implied by one's own belief of the key.
      const double believed_key = vote;
      const double pred = mean_d * believed_key + (1.0 - mean_d) * mean_g;
      ds.predictions(q, r) = rng.trunc_normal(pred, 0.08, 0.0, 1.0);
      const double conf = knows ? 0.85 : 0.55;
      ds.confidences(q, r) = rng.trunc_normal(conf, 0.08, 0.0, 1.0);
    }
  }
  return study;
}

}  // namespace pwm::fixtures
