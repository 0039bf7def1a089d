#pragma once

#include <optional>
#include <utility>

#include "pwm/types.hpp"

namespace pwm {

// Signal distribution for a binary question, stored as the probability
// of receiving signal a in each world. The identifiability constraint
// is a_given_A > a_given_B: each signal is strictly more probable in
// its own world than in the other, which does not make it the majority
// signal there.
struct SignalMatrix {
  double a_given_A = 0.0;
  double a_given_B = 0.0;

  bool valid() const noexcept {
    return 0.0 <= a_given_B && a_given_B < a_given_A && a_given_A <= 1.0;
  }

  // Label swap A<->B, a<->b. Maps the constrained triangle onto itself.
  SignalMatrix flipped() const noexcept {
    return {1.0 - a_given_B, 1.0 - a_given_A};
  }
};

// Noise channels attached to a question. vote_temp is the softmax
// temperature on votes; pred_var and conf_var are truncated-normal
// variances on [0, 0.5].
struct NoiseParams {
  double vote_temp = 1.0;
  double pred_var = 0.1;
  std::optional<double> conf_var;
};

// Probability that a respondent with the given information expertise
// receives signal t when the world is `world`. Expertise lifts the
// probability of the world's own signal linearly toward 1.
double signal_prob(Signal t, Answer world, const SignalMatrix& s, double expertise);

// (correct-signal probability, incorrect-signal probability) in `world`
// after the expertise adjustment p' = p + e(1-p).
std::pair<double, double> adjust_signal_column(const SignalMatrix& s, Answer world,
                                               double expertise);

// Posterior probability of world A for a respondent who received t and
// knows their own expertise; expertise 0 is the base respondent.
double world_posterior(Signal t, const SignalMatrix& s, double psi, double expertise);

inline double world_posterior(Signal t, const SignalMatrix& s, double psi) {
  return world_posterior(t, s, psi, 0.0);
}

// Probability that an arbitrary other respondent receives signal a,
// from the world posterior of a respondent who received t.
double other_signal_posterior(Signal t, const SignalMatrix& s, double psi,
                              double expertise = 0.0);

// Deterministic vote of an ideal respondent: the world most likely
// under their posterior; an exact tie goes to the signal's own label.
Answer ideal_vote(Signal t, const SignalMatrix& s, double psi);

// Fraction of respondents predicted to vote A by a respondent who
// received t: the posterior signal mass on every signal whose ideal
// vote is A. Predictions are noiseless in-model; respondents do not
// model others' vote noise or expertise.
double predicted_vote_fraction(Signal t, const SignalMatrix& s, double psi,
                               double expertise = 0.0);

// Softmax vote rule: probability of voting A given the posterior on A.
double vote_probability(double posterior_a, double temperature);

// Mean of the confidence channel: the posterior probability of the
// answer actually voted for (an error vote yields the complement).
double confidence_mean(Signal t, Answer vote, const SignalMatrix& s, double psi,
                       double expertise = 0.0);

}  // namespace pwm
