#include "pwm/ch.hpp"

#include <cmath>

#include "pwm/baselines.hpp"
#include "pwm/dist.hpp"
#include "pwm/rng.hpp"

namespace pwm {

double ch_perceived(double pi, double delta) {
  if (pi <= 0.0) return kNegInf;
  if (pi >= 1.0) return kPosInf;
  return delta * logit(pi);
}

namespace {

constexpr std::uint64_t kTagChInit = 0x6368;
constexpr std::uint64_t kTagChChain = 0x636863;

constexpr double kBound = 1e-9;  // keeps logit finite inside proposals

// Gaussian log density of observation x around delta * ell with
// sd = 1/sigma, up to the constant -log sqrt(2 pi).
inline double report_term(double x, double ell, double delta, double sigma) {
  const double z = (x - delta * ell) * sigma;
  return std::log(sigma) - 0.5 * z * z;
}

}  // namespace

ChResult run_ch(const ResponseDataset& ds, const ChConfig& cfg) {
  if (!ds.has_confidences())
    throw DatasetError("ch: dataset has no confidences to aggregate");
  const Index q_count = ds.n_questions();
  const Index n = ds.n_respondents();

  // Observed log-odds, NaN where vote or confidence is missing.
  Eigen::MatrixXd x(q_count, n);
  x.setConstant(std::nan(""));
  long observed = 0;
  for (Index q = 0; q < q_count; ++q)
    for (Index r = 0; r < n; ++r)
      if (const auto p = signed_probability(ds.votes(q, r), ds.confidences(q, r))) {
        x(q, r) = logit(clamp01(*p, cfg.eps));
        ++observed;
      }
  if (observed == 0) throw DatasetError("ch: no vote/confidence pairs present");

  const Rng root(cfg.seed);
  auto chains_of = [&](Index count) {
    return std::vector<std::vector<std::vector<double>>>(
        count, std::vector<std::vector<double>>(cfg.n_chains));
  };
  auto rec_pi = chains_of(q_count);
  auto rec_delta = chains_of(n);
  auto rec_sigma = chains_of(n);
  std::vector<double> pi_sum(q_count, 0.0);
  Eigen::VectorXd delta_sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sigma_sum = Eigen::VectorXd::Zero(n);
  long keep_count = 0;
  long proposed = 0, accepted = 0;

  for (int chain = 0; chain < cfg.n_chains; ++chain) {
    Rng init = root.child(kTagChInit, static_cast<std::uint64_t>(chain));
    Rng rng = root.child(kTagChChain, static_cast<std::uint64_t>(chain));

    Eigen::VectorXd pi(q_count), delta(n), sigma(n), ell(q_count);
    for (Index q = 0; q < q_count; ++q) pi[q] = init.uniform();
    for (Index r = 0; r < n; ++r) delta[r] = std::pow(init.uniform(), 0.2);  // Beta(5,1)
    for (Index r = 0; r < n; ++r) sigma[r] = init.uniform();
    for (Index q = 0; q < q_count; ++q) ell[q] = logit(pi[q]);

    const int total_iters = cfg.burnin + cfg.iterations;
    for (int iter = 0; iter < total_iters; ++iter) {
      for (Index q = 0; q < q_count; ++q) {
        ++proposed;
        const double cur = pi[q];
        const double prop = rng.trunc_normal(cur, cfg.proposal_sd, kBound, 1.0 - kBound);
        const double corr = truncnorm_log_mass(cur, cfg.proposal_sd, kBound, 1.0 - kBound) -
                            truncnorm_log_mass(prop, cfg.proposal_sd, kBound, 1.0 - kBound);
        const double ell_prop = logit(prop);
        double delta_ll = 0.0;
        for (Index r = 0; r < n; ++r) {
          if (is_missing(x(q, r))) continue;
          delta_ll += report_term(x(q, r), ell_prop, delta[r], sigma[r]) -
                      report_term(x(q, r), ell[q], delta[r], sigma[r]);
        }
        const double log_ratio = delta_ll + corr;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
          pi[q] = prop;
          ell[q] = ell_prop;
          ++accepted;
        }
      }

      for (Index r = 0; r < n; ++r) {
        ++proposed;
        const double cur = delta[r];
        const double prop = rng.trunc_normal(cur, cfg.proposal_sd, kBound, 1.0);
        const double corr = truncnorm_log_mass(cur, cfg.proposal_sd, kBound, 1.0) -
                            truncnorm_log_mass(prop, cfg.proposal_sd, kBound, 1.0);
        double delta_ll = 4.0 * (std::log(prop) - std::log(cur));  // Beta(5,1) prior
        for (Index q = 0; q < q_count; ++q) {
          if (is_missing(x(q, r))) continue;
          delta_ll += report_term(x(q, r), ell[q], prop, sigma[r]) -
                      report_term(x(q, r), ell[q], cur, sigma[r]);
        }
        const double log_ratio = delta_ll + corr;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
          delta[r] = prop;
          ++accepted;
        }
      }

      for (Index r = 0; r < n; ++r) {
        ++proposed;
        const double cur = sigma[r];
        const double prop = rng.trunc_normal(cur, cfg.proposal_sd, kBound, 1.0);
        const double corr = truncnorm_log_mass(cur, cfg.proposal_sd, kBound, 1.0) -
                            truncnorm_log_mass(prop, cfg.proposal_sd, kBound, 1.0);
        double delta_ll = 0.0;
        for (Index q = 0; q < q_count; ++q) {
          if (is_missing(x(q, r))) continue;
          delta_ll += report_term(x(q, r), ell[q], delta[r], prop) -
                      report_term(x(q, r), ell[q], delta[r], cur);
        }
        const double log_ratio = delta_ll + corr;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
          sigma[r] = prop;
          ++accepted;
        }
      }

      if (iter < cfg.burnin) continue;
      const int kept = iter - cfg.burnin;
      for (Index q = 0; q < q_count; ++q) pi_sum[q] += pi[q];
      delta_sum += delta;
      sigma_sum += sigma;
      ++keep_count;
      if (kept % cfg.thin == 0) {
        for (Index q = 0; q < q_count; ++q) rec_pi[q][chain].push_back(pi[q]);
        for (Index r = 0; r < n; ++r) {
          rec_delta[r][chain].push_back(delta[r]);
          rec_sigma[r][chain].push_back(sigma[r]);
        }
      }
    }
  }

  ChResult result;
  const double denom = static_cast<double>(keep_count);
  for (Index q = 0; q < q_count; ++q) result.pi_mean.push_back(pi_sum[q] / denom);
  result.delta_mean = delta_sum / denom;
  result.sigma_mean = sigma_sum / denom;
  result.accept_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  for (Index q = 0; q < q_count; ++q) result.pi.push_back(summarize_samples(rec_pi[q]));
  for (Index r = 0; r < n; ++r) result.delta.push_back(summarize_samples(rec_delta[r]));
  for (Index r = 0; r < n; ++r) result.sigma.push_back(summarize_samples(rec_sigma[r]));
  return result;
}

}  // namespace pwm
