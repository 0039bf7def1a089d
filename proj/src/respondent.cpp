#include "pwm/respondent.hpp"

#include <cmath>

namespace pwm {

double signal_prob(Signal t, Answer world, const SignalMatrix& s, double expertise) {
  const double p_a = world == Answer::A ? s.a_given_A : s.a_given_B;
  const double p_correct = world == Answer::A ? p_a : 1.0 - p_a;
  const double lifted = p_correct + expertise * (1.0 - p_correct);
  const bool t_correct = answer_of(t) == world;
  return t_correct ? lifted : 1.0 - lifted;
}

std::pair<double, double> adjust_signal_column(const SignalMatrix& s, Answer world,
                                               double expertise) {
  const double p = world == Answer::A ? s.a_given_A : 1.0 - s.a_given_B;
  const double lifted = p + expertise * (1.0 - p);
  return {lifted, 1.0 - lifted};
}

double world_posterior(Signal t, const SignalMatrix& s, double psi, double expertise) {
  const double lik_a = signal_prob(t, Answer::A, s, expertise) * psi;
  const double lik_b = signal_prob(t, Answer::B, s, expertise) * (1.0 - psi);
  const double denom = lik_a + lik_b;
  if (denom <= 0.0) return psi;  // signal impossible under both worlds
  return lik_a / denom;
}

double other_signal_posterior(Signal t, const SignalMatrix& s, double psi,
                              double expertise) {
  const double w = world_posterior(t, s, psi, expertise);
  return s.a_given_A * w + s.a_given_B * (1.0 - w);
}

Answer ideal_vote(Signal t, const SignalMatrix& s, double psi) {
  const double w = world_posterior(t, s, psi);
  if (w > 0.5) return Answer::A;
  if (w < 0.5) return Answer::B;
  return answer_of(t);
}

double predicted_vote_fraction(Signal t, const SignalMatrix& s, double psi,
                               double expertise) {
  const double p_other_a = other_signal_posterior(t, s, psi, expertise);
  double frac = 0.0;
  if (ideal_vote(Signal::a, s, psi) == Answer::A) frac += p_other_a;
  if (ideal_vote(Signal::b, s, psi) == Answer::A) frac += 1.0 - p_other_a;
  return frac;
}

double vote_probability(double posterior_a, double temperature) {
  // exp(p/T) / (exp(p/T) + exp((1-p)/T)), in logistic form.
  return 1.0 / (1.0 + std::exp((1.0 - 2.0 * posterior_a) / temperature));
}

double confidence_mean(Signal t, Answer vote, const SignalMatrix& s, double psi,
                       double expertise) {
  const double w = world_posterior(t, s, psi, expertise);
  return vote == Answer::A ? w : 1.0 - w;
}

}  // namespace pwm
