#include "pwm/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "pwm/dist.hpp"

namespace pwm {

double majority_vote(const std::vector<Answer>& votes) {
  if (votes.empty()) throw std::invalid_argument("majority_vote: no votes");
  long a = 0, b = 0;
  for (const Answer v : votes) (v == Answer::A ? a : b)++;
  if (a > b) return 1.0;
  if (a < b) return 0.0;
  return 0.5;
}

double surprisingly_popular(const std::vector<Answer>& votes,
                            const std::vector<double>& predictions) {
  if (votes.empty() || predictions.empty())
    throw std::invalid_argument("surprisingly_popular: needs votes and predictions");
  double a = 0.0;
  for (const Answer v : votes) a += indicator_a(v);
  const double actual = a / static_cast<double>(votes.size());
  double mean_pred = 0.0;
  for (const double p : predictions) mean_pred += p;
  mean_pred /= static_cast<double>(predictions.size());
  if (actual > mean_pred) return 1.0;
  if (actual < mean_pred) return 0.0;
  return 0.5;
}

double linear_pool(const std::vector<double>& probs_a) {
  if (probs_a.empty()) throw std::invalid_argument("linear_pool: no probabilities");
  double s = 0.0;
  for (const double p : probs_a) s += p;
  return s / static_cast<double>(probs_a.size());
}

double log_pool(const std::vector<double>& probs_a, double eps) {
  if (probs_a.empty()) throw std::invalid_argument("log_pool: no probabilities");
  double log_a = 0.0, log_b = 0.0;
  for (const double p : probs_a) {
    const double c = clamp01(p, eps);
    log_a += std::log(c);
    log_b += std::log(1.0 - c);
  }
  const double inv_n = 1.0 / static_cast<double>(probs_a.size());
  // g_A / (g_A + g_B) in log space.
  return 1.0 / (1.0 + std::exp(inv_n * (log_b - log_a)));
}

std::vector<Answer> collect_votes(const ResponseDataset& ds, Index q) {
  std::vector<Answer> votes;
  for (Index r = 0; r < ds.n_respondents(); ++r)
    if (ds.votes(q, r) != kMissingVote) votes.push_back(static_cast<Answer>(ds.votes(q, r)));
  return votes;
}

std::vector<double> collect_predictions(const ResponseDataset& ds, Index q) {
  std::vector<double> preds;
  for (Index r = 0; r < ds.n_respondents(); ++r)
    if (!is_missing(ds.predictions(q, r))) preds.push_back(ds.predictions(q, r));
  return preds;
}

std::vector<double> collect_signed_probs(const ResponseDataset& ds, Index q) {
  std::vector<double> probs;
  if (!ds.has_confidences()) return probs;
  for (Index r = 0; r < ds.n_respondents(); ++r)
    if (const auto p = signed_probability(ds.votes(q, r), ds.confidences(q, r)))
      probs.push_back(*p);
  return probs;
}

}  // namespace pwm
