#include "pwm/bcc.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pwm/dist.hpp"
#include "pwm/rng.hpp"

namespace pwm {

double bcc_competence(double theta, double delta) {
  const double num = theta * (1.0 - delta);
  const double denom = num + delta * (1.0 - theta);
  if (denom <= 0.0) return 0.5;  // theta == delta at a corner
  return num / denom;
}

namespace {

inline double vote_mass(std::int8_t vote, std::int8_t z, double competence, double g) {
  const double p_a = competence * static_cast<double>(z) + (1.0 - competence) * g;
  return vote == 1 ? p_a : 1.0 - p_a;
}

}  // namespace

double bcc_log_likelihood(const BccState& state, const VoteMatrix& votes) {
  double total = 0.0;
  for (Index q = 0; q < votes.rows(); ++q)
    for (Index r = 0; r < votes.cols(); ++r) {
      const auto v = votes(q, r);
      if (v == kMissingVote) continue;
      const double d = bcc_competence(state.theta[r], state.delta[q]);
      total += std::log(vote_mass(v, state.z[q], d, state.g[r]));
    }
  return total;
}

namespace {

constexpr std::uint64_t kTagBccInit = 0x626363;
constexpr std::uint64_t kTagBccChain = 0x62636368;

struct BccChains {
  // [scalar][chain] thinned samples
  std::vector<std::vector<std::vector<double>>> theta, delta, g;
  std::vector<std::vector<std::vector<double>>> z;  // indicator of A
};

}  // namespace

BccResult run_bcc(const ResponseDataset& ds, const BccConfig& cfg) {
  const Index q_count = ds.n_questions();
  const Index n = ds.n_respondents();
  if (q_count < 2) throw DatasetError("bcc: needs at least two questions");
  for (Index q = 0; q < q_count; ++q) {
    bool any = false;
    for (Index r = 0; r < n; ++r) any = any || ds.votes(q, r) != kMissingVote;
    if (!any) throw DatasetError("bcc: question " + std::to_string(q) + " has no votes");
  }

  const VoteMatrix& votes = ds.votes;
  const Rng root(cfg.seed);
  auto chains_of = [&](Index count) {
    return std::vector<std::vector<std::vector<double>>>(
        count, std::vector<std::vector<double>>(cfg.n_chains));
  };
  BccChains rec{chains_of(n), chains_of(q_count), chains_of(n), chains_of(q_count)};
  Eigen::VectorXd theta_sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g_sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd delta_sum = Eigen::VectorXd::Zero(q_count);
  std::vector<double> z_sum(q_count, 0.0);
  long keep_count = 0;
  long proposed = 0, accepted = 0;

  for (int chain = 0; chain < cfg.n_chains; ++chain) {
    Rng init = root.child(kTagBccInit, static_cast<std::uint64_t>(chain));
    Rng rng = root.child(kTagBccChain, static_cast<std::uint64_t>(chain));

    BccState st;
    st.z.resize(q_count);
    st.theta.resize(n);
    st.delta.resize(q_count);
    st.g.resize(n);
    for (Index q = 0; q < q_count; ++q) st.z[q] = init.bernoulli(0.5) ? 1 : 0;
    for (Index r = 0; r < n; ++r) st.theta[r] = init.uniform();
    for (Index q = 0; q < q_count; ++q) st.delta[q] = init.uniform();
    for (Index r = 0; r < n; ++r) st.g[r] = init.uniform();

    // Competence cache: D(q, r) refreshed on accepted theta/delta moves.
    Eigen::MatrixXd competence(q_count, n);
    for (Index q = 0; q < q_count; ++q)
      for (Index r = 0; r < n; ++r) competence(q, r) = bcc_competence(st.theta[r], st.delta[q]);

    auto question_loglik = [&](Index q, std::int8_t z_q) {
      double s = 0.0;
      for (Index r = 0; r < n; ++r) {
        const auto v = votes(q, r);
        if (v == kMissingVote) continue;
        s += std::log(vote_mass(v, z_q, competence(q, r), st.g[r]));
      }
      return s;
    };

    const int total_iters = cfg.burnin + cfg.iterations;
    for (int iter = 0; iter < total_iters; ++iter) {
      // Exact conditional flip of each consensus answer.
      for (Index q = 0; q < q_count; ++q) {
        const double l1 = question_loglik(q, 1);
        const double l0 = question_loglik(q, 0);
        const double p1 = 1.0 / (1.0 + std::exp(l0 - l1));
        st.z[q] = rng.bernoulli(p1) ? 1 : 0;
      }

      // Truncated-normal random walks, one scan per family.
      for (Index r = 0; r < n; ++r) {
        ++proposed;
        const double cur = st.theta[r];
        const double prop = rng.trunc_normal(cur, cfg.proposal_sd, 0.0, 1.0);
        const double corr = truncnorm_log_mass(cur, cfg.proposal_sd, 0.0, 1.0) -
                            truncnorm_log_mass(prop, cfg.proposal_sd, 0.0, 1.0);
        double delta_ll = 0.0;
        for (Index q = 0; q < q_count; ++q) {
          const auto v = votes(q, r);
          if (v == kMissingVote) continue;
          const double d_new = bcc_competence(prop, st.delta[q]);
          delta_ll += std::log(vote_mass(v, st.z[q], d_new, st.g[r])) -
                      std::log(vote_mass(v, st.z[q], competence(q, r), st.g[r]));
        }
        const double log_ratio = delta_ll + corr;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
          st.theta[r] = prop;
          for (Index q = 0; q < q_count; ++q) competence(q, r) = bcc_competence(prop, st.delta[q]);
          ++accepted;
        }
      }
      for (Index q = 0; q < q_count; ++q) {
        ++proposed;
        const double cur = st.delta[q];
        const double prop = rng.trunc_normal(cur, cfg.proposal_sd, 0.0, 1.0);
        const double corr = truncnorm_log_mass(cur, cfg.proposal_sd, 0.0, 1.0) -
                            truncnorm_log_mass(prop, cfg.proposal_sd, 0.0, 1.0);
        double delta_ll = 0.0;
        for (Index r = 0; r < n; ++r) {
          const auto v = votes(q, r);
          if (v == kMissingVote) continue;
          const double d_new = bcc_competence(st.theta[r], prop);
          delta_ll += std::log(vote_mass(v, st.z[q], d_new, st.g[r])) -
                      std::log(vote_mass(v, st.z[q], competence(q, r), st.g[r]));
        }
        const double log_ratio = delta_ll + corr;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
          st.delta[q] = prop;
          for (Index r = 0; r < n; ++r) competence(q, r) = bcc_competence(st.theta[r], prop);
          ++accepted;
        }
      }
      for (Index r = 0; r < n; ++r) {
        ++proposed;
        const double cur = st.g[r];
        const double prop = rng.trunc_normal(cur, cfg.proposal_sd, 0.0, 1.0);
        const double corr = truncnorm_log_mass(cur, cfg.proposal_sd, 0.0, 1.0) -
                            truncnorm_log_mass(prop, cfg.proposal_sd, 0.0, 1.0);
        double delta_ll = 0.0;
        for (Index q = 0; q < q_count; ++q) {
          const auto v = votes(q, r);
          if (v == kMissingVote) continue;
          delta_ll += std::log(vote_mass(v, st.z[q], competence(q, r), prop)) -
                      std::log(vote_mass(v, st.z[q], competence(q, r), cur));
        }
        const double log_ratio = delta_ll + corr;
        if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
          st.g[r] = prop;
          ++accepted;
        }
      }

      if (iter < cfg.burnin) continue;
      const int kept = iter - cfg.burnin;
      theta_sum += st.theta;
      g_sum += st.g;
      delta_sum += st.delta;
      for (Index q = 0; q < q_count; ++q) z_sum[q] += st.z[q];
      ++keep_count;
      if (kept % cfg.thin == 0) {
        for (Index r = 0; r < n; ++r) {
          rec.theta[r][chain].push_back(st.theta[r]);
          rec.g[r][chain].push_back(st.g[r]);
        }
        for (Index q = 0; q < q_count; ++q) {
          rec.delta[q][chain].push_back(st.delta[q]);
          rec.z[q][chain].push_back(st.z[q]);
        }
      }
    }
  }

  BccResult result;
  const double denom = static_cast<double>(keep_count);
  for (Index q = 0; q < q_count; ++q) result.p_true.push_back(z_sum[q] / denom);
  result.theta_mean = theta_sum / denom;
  result.g_mean = g_sum / denom;
  result.delta_mean = delta_sum / denom;
  result.accept_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  for (Index r = 0; r < n; ++r) result.theta.push_back(summarize_samples(rec.theta[r]));
  for (Index q = 0; q < q_count; ++q) result.delta.push_back(summarize_samples(rec.delta[q]));
  for (Index r = 0; r < n; ++r) result.g.push_back(summarize_samples(rec.g[r]));
  return result;
}

EigenratioResult agreement_eigenratio(const VoteMatrix& votes) {
  const Index n = votes.cols();
  if (n < 2) throw std::invalid_argument("agreement_eigenratio: needs at least 2 respondents");

  EigenratioResult result;
  result.agreement.setOnes(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index s = r + 1; s < n; ++s) {
      long both = 0, agree = 0;
      for (Index q = 0; q < votes.rows(); ++q) {
        const auto vr = votes(q, r), vs = votes(q, s);
        if (vr == kMissingVote || vs == kMissingVote) continue;
        ++both;
        agree += vr == vs;
      }
      double value = 0.5;
      if (both == 0)
        result.warnings.push_back("respondents " + std::to_string(r) + " and " +
                                  std::to_string(s) +
                                  " share no answered questions; agreement set to 0.5");
      else
        value = static_cast<double>(agree) / static_cast<double>(both);
      result.agreement(r, s) = result.agreement(s, r) = value;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(result.agreement,
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
  result.lambda1 = ev[n - 1];
  result.lambda2 = ev[n - 2];
  result.ratio = result.lambda2 <= 1e-12 ? kPosInf : result.lambda1 / result.lambda2;
  return result;
}

}  // namespace pwm
