#include "pwm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "pwm/baselines.hpp"

namespace pwm {

KappaResult cohens_kappa(const std::vector<HardAnswer>& pred,
                         const std::vector<Answer>& truth) {
  if (pred.empty() || pred.size() != truth.size())
    throw std::invalid_argument("cohens_kappa: prediction/truth lengths must match");

  const bool any_tie = std::any_of(pred.begin(), pred.end(),
                                   [](HardAnswer h) { return h == HardAnswer::tie; });
  // Scored multiset: (prediction-is-A, truth-is-A) pairs, doubled when
  // any tie is present.
  std::vector<std::pair<bool, bool>> items;
  items.reserve(pred.size() * 2);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool t = truth[i] == Answer::A;
    if (pred[i] == HardAnswer::tie) {
      items.emplace_back(true, t);
      items.emplace_back(false, t);
    } else {
      const bool p = pred[i] == HardAnswer::A;
      items.emplace_back(p, t);
      if (any_tie) items.emplace_back(p, t);
    }
  }

  const double n = static_cast<double>(items.size());
  double agree = 0.0, pred_a = 0.0, truth_a = 0.0;
  for (const auto& [p, t] : items) {
    agree += p == t;
    pred_a += p;
    truth_a += t;
  }
  const double p_o = agree / n;
  const double pa = pred_a / n, ta = truth_a / n;
  const double p_e = pa * ta + (1.0 - pa) * (1.0 - ta);

  KappaResult result;
  if (p_e >= 1.0) {
    result.degenerate = true;
    result.kappa = p_o >= 1.0 ? 1.0 : 0.0;
    result.se = 0.0;
    return result;
  }
  result.kappa = (p_o - p_e) / (1.0 - p_e);
  result.se = std::sqrt(p_o * (1.0 - p_o) / (n * (1.0 - p_e) * (1.0 - p_e)));
  if (any_tie) result.se *= std::sqrt(2.0);  // doubling halves apparent variance
  return result;
}

double brier(const std::vector<double>& prob_a, const std::vector<Answer>& truth) {
  if (prob_a.empty() || prob_a.size() != truth.size())
    throw std::invalid_argument("brier: probability/truth lengths must match");
  double s = 0.0;
  for (std::size_t i = 0; i < prob_a.size(); ++i) {
    const double d = prob_a[i] - indicator_a(truth[i]);
    s += d * d;
  }
  return s / static_cast<double>(prob_a.size());
}

RespondentScores respondent_accuracy(const ResponseDataset& ds) {
  if (!ds.has_key()) throw std::invalid_argument("respondent_accuracy: answer key required");
  const Index n = ds.n_respondents();
  RespondentScores scores;
  scores.kappa.resize(n);
  scores.brier.setConstant(n, std::nan(""));

  for (Index r = 0; r < n; ++r) {
    std::vector<HardAnswer> pred;
    std::vector<Answer> truth;
    std::vector<double> probs;
    std::vector<Answer> prob_truth;
    for (Index q = 0; q < ds.n_questions(); ++q) {
      const auto v = ds.votes(q, r);
      if (v == kMissingVote) continue;
      pred.push_back(static_cast<HardAnswer>(v));
      truth.push_back(static_cast<Answer>(ds.answer_key[q]));
      if (ds.has_confidences() && !is_missing(ds.confidences(q, r))) {
        probs.push_back(*signed_probability(v, ds.confidences(q, r)));
        prob_truth.push_back(static_cast<Answer>(ds.answer_key[q]));
      }
    }
    scores.kappa[r] = pred.empty() ? std::nan("") : cohens_kappa(pred, truth).kappa;
    if (!probs.empty()) scores.brier[r] = brier(probs, prob_truth);
  }
  return scores;
}

double correlate(const std::vector<double>& x, const std::vector<double>& y,
                 CorrMethod method) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("correlate: needs equal lengths of at least 3");

  auto pearson = [](const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double da = a[i] - ma, db = b[i] - mb;
      sab += da * db;
      saa += da * da;
      sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
  };

  if (method == CorrMethod::pearson) return pearson(x, y);

  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&v](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> rank(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank on ties
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
      i = j + 1;
    }
    return rank;
  };
  return pearson(ranks(x), ranks(y));
}

double partial_correlate(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<std::vector<double>>& controls) {
  const std::size_t n = x.size();
  if (y.size() != n || n < 3)
    throw std::invalid_argument("partial_correlate: needs equal lengths of at least 3");
  if (controls.empty()) return correlate(x, y, CorrMethod::pearson);
  for (const auto& c : controls)
    if (c.size() != n) throw std::invalid_argument("partial_correlate: control length mismatch");

  const auto k = static_cast<Index>(controls.size());
  Eigen::MatrixXd design(n, k + 1);
  design.col(0).setOnes();
  for (Index j = 0; j < k; ++j)
    design.col(j + 1) =
        Eigen::Map<const Eigen::VectorXd>(controls[j].data(), static_cast<Index>(n));

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols())
    throw std::invalid_argument("partial_correlate: controls are rank deficient");

  const Eigen::VectorXd vx = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Index>(n));
  const Eigen::VectorXd vy = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Index>(n));
  const Eigen::VectorXd rx = vx - design * qr.solve(vx);
  const Eigen::VectorXd ry = vy - design * qr.solve(vy);

  const double nx = rx.norm(), ny = ry.norm();
  if (nx <= 1e-12 * vx.norm() + 1e-300 || ny <= 1e-12 * vy.norm() + 1e-300) return 0.0;
  return rx.dot(ry) / (nx * ny);
}

RespondentCovariates respondent_covariates(const ResponseDataset& ds) {
  const Index n = ds.n_respondents();
  RespondentCovariates cov;
  cov.majority_fraction.setConstant(n, std::nan(""));
  cov.vote_a_fraction.setConstant(n, std::nan(""));

  // Per-question vote counts once.
  std::vector<long> a_count(ds.n_questions(), 0), b_count(ds.n_questions(), 0);
  for (Index q = 0; q < ds.n_questions(); ++q)
    for (Index r = 0; r < n; ++r) {
      if (ds.votes(q, r) == 1) ++a_count[q];
      else if (ds.votes(q, r) == 0) ++b_count[q];
    }

  for (Index r = 0; r < n; ++r) {
    double credit = 0.0, a_frac = 0.0;
    long answered = 0;
    for (Index q = 0; q < ds.n_questions(); ++q) {
      const auto v = ds.votes(q, r);
      if (v == kMissingVote) continue;
      ++answered;
      a_frac += v == 1;
      if (a_count[q] == b_count[q]) credit += 0.5;
      else if ((v == 1) == (a_count[q] > b_count[q])) credit += 1.0;
    }
    if (answered > 0) {
      cov.majority_fraction[r] = credit / static_cast<double>(answered);
      cov.vote_a_fraction[r] = a_frac / static_cast<double>(answered);
    }
  }
  return cov;
}

}  // namespace pwm
