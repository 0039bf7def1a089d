#include "pwm/generator.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace pwm {

using nlohmann::json;

QuestionParams sample_question_params(Rng& rng, bool with_confidence) {
  QuestionParams p;
  p.psi = rng.uniform();
  p.world = rng.bernoulli(p.psi) ? Answer::A : Answer::B;
  double u = rng.uniform(), v = rng.uniform();
  while (u == v) v = rng.uniform();
  p.signal.a_given_A = std::max(u, v);
  p.signal.a_given_B = std::min(u, v);
  p.noise.vote_temp = rng.gamma(3.0, 3.0);
  p.noise.pred_var = rng.uniform(0.0, 0.5);
  if (with_confidence) p.noise.conf_var = rng.uniform(0.0, 0.5);
  return p;
}

QuestionDraw simulate_question(const QuestionParams& params,
                               const Eigen::VectorXd& expertise, const SimConfig& cfg,
                               Rng& rng) {
  const Index n = cfg.n_respondents;
  QuestionDraw draw;
  draw.votes.resize(n);
  draw.predictions.resize(n);
  if (cfg.with_confidence) draw.confidences.resize(n);
  draw.signals.reserve(n);

  const double pred_sd = std::sqrt(params.noise.pred_var);
  const double conf_sd = params.noise.conf_var ? std::sqrt(*params.noise.conf_var) : 0.0;

  for (Index r = 0; r < n; ++r) {
    const double e = expertise.size() ? expertise[r] : 0.0;
    const double p_receive_a = signal_prob(Signal::a, params.world, params.signal, e);
    const Signal t = rng.bernoulli(p_receive_a) ? Signal::a : Signal::b;
    draw.signals.push_back(t);

    // Respondents use their own expertise only in the aware variant.
    const double own_e = cfg.expertise_aware_respondents ? e : 0.0;
    const double post_a = world_posterior(t, params.signal, params.psi, own_e);
    const double p_vote_a = vote_probability(post_a, params.noise.vote_temp);
    const Answer vote = rng.bernoulli(p_vote_a) ? Answer::A : Answer::B;
    draw.votes[r] = static_cast<std::int8_t>(vote);

    const double pred_mean = predicted_vote_fraction(t, params.signal, params.psi, own_e);
    draw.predictions[r] = rng.trunc_normal(pred_mean, pred_sd, 0.0, 1.0);

    if (cfg.with_confidence) {
      const double conf_mean = vote == Answer::A ? post_a : 1.0 - post_a;
      draw.confidences[r] = rng.trunc_normal(conf_mean, conf_sd, 0.0, 1.0);
    }
  }
  return draw;
}

std::pair<ResponseDataset, StudyTruth> simulate_study(const SimConfig& cfg) {
  Rng root(cfg.seed);
  StudyTruth truth;
  truth.expertise = Eigen::VectorXd::Zero(cfg.n_respondents);
  if (cfg.with_expertise) {
    Rng er = root.child(0x45585052ULL);  // expertise stream
    for (Index r = 0; r < cfg.n_respondents; ++r) truth.expertise[r] = er.uniform();
  }

  ResponseDataset ds;
  ds.votes.resize(cfg.n_questions, cfg.n_respondents);
  ds.predictions.resize(cfg.n_questions, cfg.n_respondents);
  if (cfg.with_confidence) ds.confidences.resize(cfg.n_questions, cfg.n_respondents);

  for (Index q = 0; q < cfg.n_questions; ++q) {
    Rng qr = root.child(static_cast<std::uint64_t>(q));
    QuestionParams params =
        cfg.fixed_params ? *cfg.fixed_params : sample_question_params(qr, cfg.with_confidence);
    const QuestionDraw draw = simulate_question(params, truth.expertise, cfg, qr);

    ds.question_ids.push_back("q" + std::to_string(q));
    ds.votes.row(q) = draw.votes.transpose();
    ds.predictions.row(q) = draw.predictions.transpose();
    if (cfg.with_confidence) ds.confidences.row(q) = draw.confidences.transpose();
    ds.answer_key.push_back(static_cast<std::int8_t>(params.world));
    ds.reversed.push_back(0);
    truth.params.push_back(params);
  }
  return {std::move(ds), std::move(truth)};
}

void save_truth(const StudyTruth& truth, const std::filesystem::path& path) {
  json questions = json::array();
  for (const auto& p : truth.params) {
    json item{{"psi", p.psi},
              {"world", p.world == Answer::A ? "A" : "B"},
              {"s_a", p.signal.a_given_A},
              {"s_b", p.signal.a_given_B},
              {"vote_noise", p.noise.vote_temp},
              {"prediction_noise", p.noise.pred_var}};
    if (p.noise.conf_var) item["confidence_noise"] = *p.noise.conf_var;
    questions.push_back(std::move(item));
  }
  json doc{{"questions", std::move(questions)},
           {"expertise", std::vector<double>(truth.expertise.begin(), truth.expertise.end())}};
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

StudyTruth load_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  json doc;
  in >> doc;
  StudyTruth truth;
  for (const auto& item : doc.at("questions")) {
    QuestionParams p;
    p.psi = item.at("psi").get<double>();
    p.world = item.at("world").get<std::string>() == "A" ? Answer::A : Answer::B;
    p.signal.a_given_A = item.at("s_a").get<double>();
    p.signal.a_given_B = item.at("s_b").get<double>();
    p.noise.vote_temp = item.at("vote_noise").get<double>();
    p.noise.pred_var = item.at("prediction_noise").get<double>();
    if (item.contains("confidence_noise"))
      p.noise.conf_var = item["confidence_noise"].get<double>();
    truth.params.push_back(p);
  }
  const auto e = doc.at("expertise").get<std::vector<double>>();
  truth.expertise = Eigen::Map<const Eigen::VectorXd>(e.data(), static_cast<Index>(e.size()));
  return truth;
}

}  // namespace pwm
