#include "pwm/likelihood.hpp"

#include <cmath>

#include "pwm/dist.hpp"

namespace pwm {

QuestionData QuestionData::slice(const ResponseDataset& ds, Index q) {
  QuestionData data;
  data.votes = ds.votes.row(q).transpose();
  data.predictions = ds.predictions.row(q).transpose();
  if (ds.has_confidences()) data.confidences = ds.confidences.row(q).transpose();
  return data;
}

Index QuestionData::n_votes() const {
  Index count = 0;
  for (Index r = 0; r < votes.size(); ++r)
    if (votes[r] != kMissingVote) ++count;
  return count;
}

namespace {

constexpr double kLogNormConst = -0.9189385332046727417803297;  // -log sqrt(2 pi)

// Truncated-normal log density on [0, 1] from precomputed pieces:
// norm = -log sd - log mass, z = (x - mean) / sd.
inline double trunc01_logpdf(double x, double mean, double inv_sd, double norm) {
  const double z = (x - mean) * inv_sd;
  return kLogNormConst - 0.5 * z * z + norm;
}

}  // namespace

StateBlock make_state_block(const QuestionParams& state, const LikelihoodFlags& flags) {
  StateBlock block;
  const double pred_sd = std::sqrt(state.noise.pred_var);
  block.pred_degenerate = pred_sd <= 0.0;
  block.inv_pred_sd = block.pred_degenerate ? 0.0 : 1.0 / pred_sd;

  double conf_sd = 0.0;
  if (flags.use_confidences) {
    conf_sd = state.noise.conf_var ? std::sqrt(*state.noise.conf_var) : 0.0;
    block.conf_degenerate = conf_sd <= 0.0;
    block.inv_conf_sd = block.conf_degenerate ? 0.0 : 1.0 / conf_sd;
  }

  for (const Signal t : {Signal::b, Signal::a}) {
    const int ti = static_cast<int>(t);
    const double w = world_posterior(t, state.signal, state.psi);
    block.post_a[ti] = w;
    block.log_sig_zero[ti] = std::log(signal_prob(t, state.world, state.signal, 0.0));
    block.pred_mean[ti] = predicted_vote_fraction(t, state.signal, state.psi);
    const double p_vote_a = vote_probability(w, state.noise.vote_temp);
    block.log_vote_a[ti] = std::log(p_vote_a);
    block.log_vote_b[ti] = std::log1p(-p_vote_a);
    block.pred_norm[ti] =
        block.pred_degenerate
            ? 0.0
            : -std::log(pred_sd) - truncnorm_log_mass(block.pred_mean[ti], pred_sd, 0.0, 1.0);
    if (flags.use_confidences) {
      for (const Answer v : {Answer::B, Answer::A}) {
        const int vi = static_cast<int>(v);
        const double mean = v == Answer::A ? w : 1.0 - w;
        block.conf_mean[ti][vi] = mean;
        block.conf_norm[ti][vi] =
            block.conf_degenerate
                ? 0.0
                : -std::log(conf_sd) - truncnorm_log_mass(mean, conf_sd, 0.0, 1.0);
      }
    }
  }
  return block;
}

double respondent_log_term(const QuestionParams& state, const StateBlock& block,
                           std::int8_t vote, double prediction, double confidence,
                           double expertise, const LikelihoodFlags& flags) {
  if (vote == kMissingVote) return 0.0;

  double lw[2];
  for (const Signal t : {Signal::b, Signal::a}) {
    const int ti = static_cast<int>(t);
    double acc = expertise == 0.0
                     ? block.log_sig_zero[ti]
                     : std::log(signal_prob(t, state.world, state.signal, expertise));

    double post, pred_mean, conf_mean_v = 0.0;
    double log_vote_a, log_vote_b;
    if (flags.expertise_aware) {
      // Respondents who know their own expertise need per-respondent
      // posteriors; this is the expensive path.
      post = world_posterior(t, state.signal, state.psi, expertise);
      pred_mean = predicted_vote_fraction(t, state.signal, state.psi, expertise);
      const double p_vote_a = vote_probability(post, state.noise.vote_temp);
      log_vote_a = std::log(p_vote_a);
      log_vote_b = std::log1p(-p_vote_a);
      if (flags.use_confidences) conf_mean_v = vote == 1 ? post : 1.0 - post;
    } else {
      post = block.post_a[ti];
      pred_mean = block.pred_mean[ti];
      log_vote_a = block.log_vote_a[ti];
      log_vote_b = block.log_vote_b[ti];
      if (flags.use_confidences) conf_mean_v = block.conf_mean[ti][vote];
    }

    acc += vote == 1 ? log_vote_a : log_vote_b;

    if (!is_missing(prediction)) {
      if (block.pred_degenerate) {
        acc += prediction == pred_mean ? kPosInf : kNegInf;
      } else if (flags.expertise_aware) {
        const double sd = 1.0 / block.inv_pred_sd;
        acc += truncnorm_logpdf(prediction, pred_mean, sd, 0.0, 1.0);
      } else {
        acc += trunc01_logpdf(prediction, pred_mean, block.inv_pred_sd, block.pred_norm[ti]);
      }
    }

    if (flags.use_confidences && !is_missing(confidence)) {
      if (block.conf_degenerate) {
        acc += confidence == conf_mean_v ? kPosInf : kNegInf;
      } else if (flags.expertise_aware) {
        const double sd = 1.0 / block.inv_conf_sd;
        acc += truncnorm_logpdf(confidence, conf_mean_v, sd, 0.0, 1.0);
      } else {
        acc += trunc01_logpdf(confidence, conf_mean_v, block.inv_conf_sd,
                              block.conf_norm[ti][vote]);
      }
    }
    lw[ti] = acc;
  }
  return logsumexp2(lw[0], lw[1]);
}

double log_likelihood_question(const QuestionParams& state, const QuestionData& data,
                               const Eigen::VectorXd& expertise,
                               const LikelihoodFlags& flags) {
  const StateBlock block = make_state_block(state, flags);
  const bool has_conf = data.confidences.size() > 0;
  double total = 0.0;
  for (Index r = 0; r < data.n(); ++r) {
    const double conf = has_conf ? data.confidences[r] : std::nan("");
    const double e = expertise.size() ? expertise[r] : 0.0;
    total += respondent_log_term(state, block, data.votes[r], data.predictions[r], conf, e,
                                 flags);
    if (total == kNegInf) return kNegInf;
  }
  return total;
}

double log_prior_question(const QuestionParams& state, bool with_confidence) {
  if (state.psi < 0.0 || state.psi > 1.0) return kNegInf;
  if (!state.signal.valid()) return kNegInf;
  if (state.noise.vote_temp <= 0.0) return kNegInf;
  if (state.noise.pred_var < 0.0 || state.noise.pred_var > 0.5) return kNegInf;
  if (with_confidence) {
    if (!state.noise.conf_var) return kNegInf;
    if (*state.noise.conf_var < 0.0 || *state.noise.conf_var > 0.5) return kNegInf;
  }
  const double world_mass = state.world == Answer::A ? state.psi : 1.0 - state.psi;
  if (world_mass <= 0.0) return kNegInf;
  return std::log(world_mass) + gamma_logpdf(state.noise.vote_temp, 3.0, 3.0);
}

}  // namespace pwm
