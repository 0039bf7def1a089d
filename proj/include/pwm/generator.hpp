#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "pwm/dataset.hpp"
#include "pwm/respondent.hpp"
#include "pwm/rng.hpp"
#include "pwm/types.hpp"

namespace pwm {

// Latent state of one question.
struct QuestionParams {
  double psi = 0.5;
  Answer world = Answer::A;
  SignalMatrix signal;
  NoiseParams noise;
};

struct SimConfig {
  Index n_respondents = 1;
  Index n_questions = 1;
  bool with_confidence = false;
  bool with_expertise = false;
  // When set, respondents condition on their own expertise when forming
  // posteriors, votes, predictions and confidences.
  bool expertise_aware_respondents = false;
  std::uint64_t seed = 0;
  // Overrides the per-question prior draw with fixed latent parameters.
  std::optional<QuestionParams> fixed_params;
};

struct StudyTruth {
  std::vector<QuestionParams> params;
  Eigen::VectorXd expertise;
};

// One draw of the per-question latents: psi ~ Uniform(0,1) (the uniform
// Beta hyperprior), world ~ Bernoulli(psi), (s_A, s_B) uniform on the
// triangle 0 <= s_B < s_A <= 1 by sorting two uniforms, vote
// temperature ~ Gamma(shape 3, rate 3), prediction noise variance
// ~ Uniform[0, 0.5], confidence noise variance likewise when enabled.
QuestionParams sample_question_params(Rng& rng, bool with_confidence);

// Per-question slice of a simulated dataset, plus the sampled signals.
struct QuestionDraw {
  VoteVector votes;
  Eigen::VectorXd predictions;
  Eigen::VectorXd confidences;  // size 0 when the channel is off
  std::vector<Signal> signals;
};

QuestionDraw simulate_question(const QuestionParams& params,
                               const Eigen::VectorXd& expertise, const SimConfig& cfg,
                               Rng& rng);

// Samples a whole study: independent question params, one shared
// expertise vector (Uniform[0,1] each when enabled, else zeros). The
// answer key records the sampled worlds. Question q draws from the
// sub-stream (seed, q), so runs are reproducible question by question.
std::pair<ResponseDataset, StudyTruth> simulate_study(const SimConfig& cfg);

void save_truth(const StudyTruth& truth, const std::filesystem::path& path);
StudyTruth load_truth(const std::filesystem::path& path);

}  // namespace pwm
