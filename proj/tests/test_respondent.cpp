#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pwm/respondent.hpp"

using namespace pwm;

namespace {
const SignalMatrix kFootnote{0.8, 0.7};  // the majority-wrong construction
}

TEST_CASE("world posterior matches the two-world Bayes rule") {
  // (.8)(.5) / ((.8)(.5) + (.7)(.5)) = 8/15
  CHECK(world_posterior(Signal::a, kFootnote, 0.5) == doctest::Approx(8.0 / 15.0).epsilon(1e-12));
  CHECK(world_posterior(Signal::a, kFootnote, 1.0) == doctest::Approx(1.0));
  CHECK(world_posterior(Signal::b, kFootnote, 1.0) == doctest::Approx(1.0));
  // Symmetric matrix: posterior equals the diagonal entry.
  CHECK(world_posterior(Signal::a, {0.75, 0.25}, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("world posterior agrees with the joint-table oracle on a grid") {
  for (double sa : {0.55, 0.8, 0.95})
    for (double sb : {0.1, 0.4, 0.5})
      for (double psi : {0.2, 0.5, 0.9})
        for (double e : {0.0, 0.3, 1.0}) {
          const SignalMatrix s{sa, sb};
          const oracle::JointTable table(s, psi, e);
          CHECK(world_posterior(Signal::a, s, psi, e) ==
                doctest::Approx(table.world_posterior_a(Signal::a)).epsilon(1e-12));
          CHECK(world_posterior(Signal::b, s, psi, e) ==
                doctest::Approx(table.world_posterior_a(Signal::b)).epsilon(1e-12));
        }
}

TEST_CASE("signal a never favors B relative to signal b") {
  for (double sa : {0.51, 0.7, 0.99})
    for (double sb : {0.0, 0.2, 0.5})
      for (double psi : {0.05, 0.5, 0.95}) {
        if (sb >= sa) continue;
        const SignalMatrix s{sa, sb};
        CHECK(world_posterior(Signal::a, s, psi) >= world_posterior(Signal::b, s, psi));
      }
}

TEST_CASE("other-signal posterior: hand value and oracle") {
  // 0.8 * 8/15 + 0.7 * 7/15 = 113/150
  CHECK(other_signal_posterior(Signal::a, kFootnote, 0.5) ==
        doctest::Approx(113.0 / 150.0).epsilon(1e-12));
  CHECK(other_signal_posterior(Signal::a, kFootnote, 1.0) == doctest::Approx(0.8));
  CHECK(other_signal_posterior(Signal::b, kFootnote, 1.0) == doctest::Approx(0.8));
  CHECK(other_signal_posterior(Signal::a, {1.0, 0.0}, 0.5) == doctest::Approx(1.0));

  const oracle::JointTable table(kFootnote, 0.35, 0.0);
  CHECK(other_signal_posterior(Signal::a, kFootnote, 0.35) ==
        doctest::Approx(table.other_signal_a(Signal::a)).epsilon(1e-12));
}

TEST_CASE("ideal vote follows the posterior and breaks ties toward the signal") {
  CHECK(ideal_vote(Signal::a, kFootnote, 0.5) == Answer::A);
  // P(A|a) = 0.12/0.52 < 0.5
  CHECK(ideal_vote(Signal::a, {0.6, 0.5}, 0.2) == Answer::B);
  // 0.8 * 0.2 / (0.8 * 0.2 + 0.2 * 0.8) = 0.5 exactly
  CHECK(world_posterior(Signal::a, {0.8, 0.2}, 0.2) == doctest::Approx(0.5));
  CHECK(ideal_vote(Signal::a, {0.8, 0.2}, 0.2) == Answer::A);
  CHECK(ideal_vote(Signal::b, {0.8, 0.2}, 0.8) == Answer::B);
}

TEST_CASE("predicted vote fraction sums the enumerable signal terms") {
  // Both signals map to a vote for A.
  CHECK(predicted_vote_fraction(Signal::a, {0.9, 0.4}, 0.9) == doctest::Approx(1.0));
  // Identity mapping: equals the other-signal posterior.
  CHECK(predicted_vote_fraction(Signal::a, kFootnote, 0.5) ==
        doctest::Approx(113.0 / 150.0).epsilon(1e-12));
  // World certainly B, everyone receives b and votes B.
  CHECK(predicted_vote_fraction(Signal::b, {1.0, 0.0}, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("predicted vote fraction matches brute enumeration over signals and votes") {
  for (double sa : {0.6, 0.8, 0.97})
    for (double sb : {0.05, 0.3, 0.55})
      for (double psi : {0.15, 0.5, 0.85}) {
        if (sb >= sa) continue;
        const SignalMatrix s{sa, sb};
        for (const Signal own : {Signal::a, Signal::b}) {
          const oracle::JointTable table(s, psi, 0.0);
          double expected = 0.0;
          const double p_other_a = table.other_signal_a(own);
          if (ideal_vote(Signal::a, s, psi) == Answer::A) expected += p_other_a;
          if (ideal_vote(Signal::b, s, psi) == Answer::A) expected += 1.0 - p_other_a;
          CHECK(predicted_vote_fraction(own, s, psi) ==
                doctest::Approx(expected).epsilon(1e-12));
          CHECK(predicted_vote_fraction(own, s, psi) >= 0.0);
          CHECK(predicted_vote_fraction(own, s, psi) <= 1.0);
        }
      }
}

TEST_CASE("vote probability is a symmetric monotone softmax") {
  CHECK(vote_probability(0.5, 0.3) == doctest::Approx(0.5));
  CHECK(vote_probability(0.5, 7.0) == doctest::Approx(0.5));
  CHECK(vote_probability(1.0, 1e-4) == doctest::Approx(1.0));
  CHECK(vote_probability(0.0, 1e-4) == doctest::Approx(0.0).scale(1.0));
  // e^0.8 / (e^0.8 + e^0.2) = 1 / (1 + e^-0.6)
  CHECK(vote_probability(0.8, 1.0) == doctest::Approx(1.0 / (1.0 + std::exp(-0.6))).epsilon(1e-12));

  double prev = -1.0;
  for (double p = 0.0; p <= 1.0001; p += 0.05) {
    const double f = vote_probability(p, 0.7);
    CHECK(f > prev);
    CHECK(f + vote_probability(1.0 - p, 0.7) == doctest::Approx(1.0).epsilon(1e-12));
    prev = f;
  }
}

TEST_CASE("expertise lifts the correct signal linearly") {
  const SignalMatrix s{0.4, 0.1};
  CHECK(adjust_signal_column(s, Answer::A, 0.5).first == doctest::Approx(0.7));
  CHECK(adjust_signal_column(s, Answer::A, 0.0).first == doctest::Approx(0.4));
  CHECK(adjust_signal_column(s, Answer::A, 1.0).first == doctest::Approx(1.0));
  for (double e = 0.0; e <= 1.0; e += 0.1) {
    const auto [correct, incorrect] = adjust_signal_column(s, Answer::B, e);
    CHECK(correct + incorrect == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Monotone in expertise.
  double prev = 0.0;
  for (double e = 0.0; e <= 1.0; e += 0.05) {
    const double c = adjust_signal_column(s, Answer::A, e).first;
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("expertise-aware posterior reduces to the base at zero and saturates at one") {
  for (double sa : {0.6, 0.8})
    for (double sb : {0.2, 0.5})
      for (double psi : {0.3, 0.5, 0.7}) {
        if (sb >= sa) continue;
        const SignalMatrix s{sa, sb};
        CHECK(world_posterior(Signal::a, s, psi, 0.0) == world_posterior(Signal::a, s, psi));
        CHECK(world_posterior(Signal::b, s, psi, 0.0) == world_posterior(Signal::b, s, psi));
      }
  // e = 1: only the world whose own signal matches survives.
  CHECK(world_posterior(Signal::a, kFootnote, 0.5, 1.0) == doctest::Approx(1.0));
  CHECK(world_posterior(Signal::b, kFootnote, 0.5, 1.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("expertise-aware posterior on the matching world dominates the base at even prior") {
  for (double sa : {0.55, 0.75, 0.9})
    for (double sb : {0.1, 0.35})
      for (double e : {0.1, 0.5, 0.9}) {
        const SignalMatrix s{sa, sb};
        CHECK(world_posterior(Signal::a, s, 0.5, e) >=
              world_posterior(Signal::a, s, 0.5) - 1e-12);
        CHECK(1.0 - world_posterior(Signal::b, s, 0.5, e) >=
              1.0 - world_posterior(Signal::b, s, 0.5) - 1e-12);
      }
}

TEST_CASE("confidence mean is the posterior of the voted answer") {
  const SignalMatrix s{0.8, 0.2};
  const double post = world_posterior(Signal::a, s, 0.5);
  CHECK(post == doctest::Approx(0.8));
  CHECK(confidence_mean(Signal::a, Answer::A, s, 0.5) == doctest::Approx(0.8));
  CHECK(confidence_mean(Signal::a, Answer::B, s, 0.5) == doctest::Approx(0.2));
  CHECK(confidence_mean(Signal::a, Answer::A, kFootnote, 0.5) ==
        doctest::Approx(8.0 / 15.0).epsilon(1e-12));
}
