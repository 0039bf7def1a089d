#pragma once

#include <vector>

#include "pwm/dataset.hpp"
#include "pwm/types.hpp"

namespace pwm {

enum class HardAnswer : std::int8_t { B = 0, A = 1, tie = 2 };

// 0.5 is exactly a tie; anything else thresholds.
inline HardAnswer harden(double prob_a) {
  if (prob_a > 0.5) return HardAnswer::A;
  if (prob_a < 0.5) return HardAnswer::B;
  return HardAnswer::tie;
}

struct KappaResult {
  double kappa = 0.0;
  double se = 0.0;
  bool degenerate = false;  // chance agreement hit 1 on the scored set
};

// Cohen's kappa with tie handling by doubling: non-tied items appear
// twice, tied items once per answer, and the standard error computed
// on the doubled set is scaled back by sqrt(2). A degenerate chance
// agreement of 1 scores 1 for perfect agreement and 0 otherwise.
KappaResult cohens_kappa(const std::vector<HardAnswer>& pred,
                         const std::vector<Answer>& truth);

// Mean squared error of the probability put on A against the key.
double brier(const std::vector<double>& prob_a, const std::vector<Answer>& truth);

struct RespondentScores {
  Eigen::VectorXd kappa;  // vs the answer key, over answered questions
  Eigen::VectorXd brier;  // from signed probabilities; NaN without confidences
};

RespondentScores respondent_accuracy(const ResponseDataset& ds);

enum class CorrMethod { pearson, spearman };

double correlate(const std::vector<double>& x, const std::vector<double>& y,
                 CorrMethod method);

// Pearson correlation of the least-squares residuals of x and y on
// [1, controls]. No controls reduces to plain Pearson; an (effectively)
// zero residual on either side is defined as 0.
double partial_correlate(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<std::vector<double>>& controls);

struct RespondentCovariates {
  Eigen::VectorXd majority_fraction;  // ties credit 0.5 to both sides
  Eigen::VectorXd vote_a_fraction;
};

RespondentCovariates respondent_covariates(const ResponseDataset& ds);

}  // namespace pwm
