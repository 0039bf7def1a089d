#include <doctest.h>

#include <cmath>
#include <map>

#include "pwm/generator.hpp"
#include "pwm/likelihood.hpp"

using namespace pwm;

TEST_CASE("prior draws respect the documented distributions") {
  Rng rng(17);
  const int n = 100000;
  double psi_sum = 0.0, nv_sum = 0.0, nm_sum = 0.0;
  int constraint_ok = 0;
  for (int i = 0; i < n; ++i) {
    const QuestionParams p = sample_question_params(rng, true);
    constraint_ok += p.signal.a_given_A > p.signal.a_given_B;
    psi_sum += p.psi;
    nv_sum += p.noise.vote_temp;
    nm_sum += p.noise.pred_var;
    REQUIRE(p.noise.conf_var.has_value());
  }
  CHECK(constraint_ok == n);
  // Uniform(0,1) mean with 3-sigma head room: sd of the mean is
  // 1/sqrt(12 n) ~ 0.0009.
  CHECK(psi_sum / n == doctest::Approx(0.5).epsilon(0.006));
  CHECK(nv_sum / n == doctest::Approx(1.0).epsilon(0.01));  // Gamma(3, 3) mean
  CHECK(nm_sum / n == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("triangle draw is uniform: P(s_A > t) matches 1 - t^2 on the sorted pair") {
  Rng rng(23);
  const int n = 100000;
  int above = 0;
  for (int i = 0; i < n; ++i) {
    const QuestionParams p = sample_question_params(rng, false);
    above += p.signal.a_given_A > 0.8;
  }
  // max of two uniforms: P(max > 0.8) = 1 - 0.64.
  CHECK(static_cast<double>(above) / n == doctest::Approx(0.36).epsilon(0.02));
}

TEST_CASE("noiseless perfectly-informative question votes unanimously") {
  QuestionParams p;
  p.psi = 0.5;
  p.world = Answer::A;
  p.signal = {1.0, 0.0};
  p.noise = {1e-9, 1e-12, std::nullopt};
  SimConfig cfg;
  cfg.n_respondents = 50;
  Rng rng(5);
  const auto draw = simulate_question(p, Eigen::VectorXd::Zero(50), cfg, rng);
  for (Index r = 0; r < 50; ++r) {
    CHECK(draw.votes[r] == 1);
    CHECK(draw.predictions[r] == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("footnote construction: majority votes incorrectly and fractions converge") {
  QuestionParams p;
  p.psi = 0.5;
  p.world = Answer::B;
  p.signal = {0.8, 0.7};
  p.noise = {1e-6, 1e-12, std::nullopt};
  SimConfig cfg;
  cfg.n_respondents = 20000;
  Rng rng(40);
  const auto draw = simulate_question(p, Eigen::VectorXd::Zero(cfg.n_respondents), cfg, rng);
  double vote_a = 0.0, pred_a_signal = 0.0;
  long a_holders = 0;
  for (Index r = 0; r < cfg.n_respondents; ++r) {
    vote_a += draw.votes[r];
    if (draw.signals[r] == Signal::a) {
      pred_a_signal += draw.predictions[r];
      ++a_holders;
    }
  }
  CHECK(vote_a / cfg.n_respondents == doctest::Approx(0.7).epsilon(0.02));
  CHECK(pred_a_signal / a_holders == doctest::Approx(113.0 / 150.0).epsilon(0.02));
}

TEST_CASE("empirical vote mass matches enumeration within 0.02 at 10^4 draws") {
  QuestionParams p;
  p.psi = 0.35;
  p.world = Answer::A;
  p.signal = {0.65, 0.3};
  p.noise = {0.4, 0.05, std::nullopt};
  SimConfig cfg;
  cfg.n_respondents = 10000;
  Rng rng(77);
  const auto draw = simulate_question(p, Eigen::VectorXd::Zero(cfg.n_respondents), cfg, rng);
  double vote_a = 0.0;
  for (Index r = 0; r < cfg.n_respondents; ++r) vote_a += draw.votes[r];

  double expected = 0.0;
  for (const Signal t : {Signal::a, Signal::b}) {
    const double p_t = signal_prob(t, p.world, p.signal, 0.0);
    const double post = world_posterior(t, p.signal, p.psi);
    expected += p_t * vote_probability(post, p.noise.vote_temp);
  }
  CHECK(vote_a / cfg.n_respondents == doctest::Approx(expected).epsilon(0.0).scale(1.0).epsilon(0.02));
}

TEST_CASE("expertise shifts empirical signal frequencies per the linear lift") {
  QuestionParams p;
  p.psi = 0.5;
  p.world = Answer::B;
  p.signal = {0.6, 0.45};
  p.noise = {0.5, 0.1, std::nullopt};
  SimConfig cfg;
  cfg.n_respondents = 10000;
  const double e = 0.6;
  Rng rng(91);
  const auto draw =
      simulate_question(p, Eigen::VectorXd::Constant(cfg.n_respondents, e), cfg, rng);
  long b_signals = 0;
  for (const Signal t : draw.signals) b_signals += t == Signal::b;
  const double expected = adjust_signal_column(p.signal, Answer::B, e).first;
  CHECK(static_cast<double>(b_signals) / cfg.n_respondents ==
        doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("studies are reproducible, validated, and carry their truth") {
  SimConfig cfg;
  cfg.n_questions = 80;
  cfg.n_respondents = 39;  // trivia-study shape
  cfg.with_confidence = true;
  cfg.with_expertise = true;
  cfg.seed = 2025;

  const auto [ds, truth] = simulate_study(cfg);
  CHECK(ds.n_questions() == 80);
  CHECK(ds.n_respondents() == 39);
  CHECK(validate(ds).ok());
  REQUIRE(ds.has_key());
  for (Index q = 0; q < 80; ++q)
    CHECK(ds.answer_key[q] == static_cast<std::int8_t>(truth.params[q].world));
  for (Index r = 0; r < 39; ++r) {
    CHECK(truth.expertise[r] > 0.0);
    CHECK(truth.expertise[r] < 1.0);
  }

  const auto [ds2, truth2] = simulate_study(cfg);
  CHECK(ds.votes == ds2.votes);
  CHECK(ds.predictions == ds2.predictions);
  CHECK(ds.confidences == ds2.confidences);

  SimConfig plain = cfg;
  plain.with_expertise = false;
  const auto [ds3, truth3] = simulate_study(plain);
  CHECK(truth3.expertise.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("truth sidecar round-trips") {
  SimConfig cfg;
  cfg.n_questions = 5;
  cfg.n_respondents = 4;
  cfg.with_confidence = true;
  cfg.with_expertise = true;
  cfg.seed = 7;
  const auto [ds, truth] = simulate_study(cfg);
  const auto path = std::filesystem::temp_directory_path() / "pwm_truth_test.json";
  save_truth(truth, path);
  const auto back = load_truth(path);
  REQUIRE(back.params.size() == truth.params.size());
  for (std::size_t q = 0; q < truth.params.size(); ++q) {
    CHECK(back.params[q].psi == truth.params[q].psi);
    CHECK(back.params[q].world == truth.params[q].world);
    CHECK(back.params[q].signal.a_given_A == truth.params[q].signal.a_given_A);
    CHECK(back.params[q].noise.vote_temp == truth.params[q].noise.vote_temp);
  }
  CHECK(back.expertise == truth.expertise);
  std::filesystem::remove(path);
}
