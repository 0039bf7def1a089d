#pragma once

#include <optional>
#include <vector>

#include "pwm/dataset.hpp"
#include "pwm/types.hpp"

namespace pwm {

// Probability a respondent puts on answer A: their confidence if they
// voted A, its complement otherwise.
inline std::optional<double> signed_probability(std::int8_t vote, double confidence) {
  if (vote == kMissingVote || is_missing(confidence)) return std::nullopt;
  return vote == 1 ? confidence : 1.0 - confidence;
}

// All baselines return the probability assigned to answer A and skip
// missing entries; ties and exact balances return 0.5.

double majority_vote(const std::vector<Answer>& votes);

double surprisingly_popular(const std::vector<Answer>& votes,
                            const std::vector<double>& predictions);

double linear_pool(const std::vector<double>& probs_a);

// Normalized geometric mean of the per-answer probabilities; inputs are
// clamped to [eps, 1-eps] so one extreme respondent cannot annihilate
// an answer.
double log_pool(const std::vector<double>& probs_a, double eps = 1e-6);

// Per-question extraction helpers (missing cells dropped).
std::vector<Answer> collect_votes(const ResponseDataset& ds, Index q);
std::vector<double> collect_predictions(const ResponseDataset& ds, Index q);
std::vector<double> collect_signed_probs(const ResponseDataset& ds, Index q);

}  // namespace pwm
