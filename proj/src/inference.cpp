#include "pwm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwm/diagnostics.hpp"
#include "pwm/dist.hpp"
#include "pwm/parallel.hpp"
#include "pwm/rng.hpp"

namespace pwm {

namespace {

// Stream tags for the independent rng sub-streams.
constexpr std::uint64_t kTagInit = 0x696e6974;       // chain/question init
constexpr std::uint64_t kTagSingle = 0x73696e67;     // single-question sweeps
constexpr std::uint64_t kTagQuestion = 0x71626c6b;   // multi: question blocks
constexpr std::uint64_t kTagRespondent = 0x72626c6b; // multi: respondent blocks
constexpr std::uint64_t kTagExpInit = 0x65696e69;    // multi: expertise init
constexpr std::uint64_t kTagSwap = 0x73776170;       // replica exchange

struct MoveCounters {
  long proposed = 0;
  long accepted = 0;
  double rate() const {
    return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  }
};

struct SweepContext {
  const QuestionData* data = nullptr;
  const Eigen::VectorXd* expertise = nullptr;
  LikelihoodFlags flags;
  bool sample_conf_noise = false;
  bool fix_vote = false, fix_pred = false, fix_conf = false;
  ProposalSds sds;
};

// Prior and likelihood are cached separately so tempered targets and
// replica swaps need no re-evaluation.
struct ChainState {
  QuestionParams params;
  double log_prior = kNegInf;
  double log_lik = kNegInf;
};

void refresh_density(ChainState& st, const SweepContext& ctx) {
  st.log_prior = log_prior_question(st.params, ctx.sample_conf_noise);
  st.log_lik = st.log_prior == kNegInf
                   ? kNegInf
                   : log_likelihood_question(st.params, *ctx.data, *ctx.expertise, ctx.flags);
}

inline double tempered_target(const ChainState& st, double beta) {
  if (st.log_prior == kNegInf || st.log_lik == kNegInf) return kNegInf;
  return st.log_prior + beta * st.log_lik;
}

ChainState init_state(const SweepContext& ctx, const ChainConfig& cfg, Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    ChainState st;
    st.params = sample_question_params(rng, ctx.sample_conf_noise);
    if (cfg.fixed_vote_noise) st.params.noise.vote_temp = *cfg.fixed_vote_noise;
    if (cfg.fixed_pred_noise) st.params.noise.pred_var = *cfg.fixed_pred_noise;
    if (ctx.sample_conf_noise && cfg.fixed_conf_noise)
      st.params.noise.conf_var = *cfg.fixed_conf_noise;
    refresh_density(st, ctx);
    if (std::isfinite(st.log_prior) && std::isfinite(st.log_lik)) return st;
  }
  throw std::runtime_error("mcmc: could not find a finite-density starting state");
}

// One truncated-normal random-walk move on a scalar. `set` writes the
// proposal into a candidate parameter struct.
template <typename Set>
void scalar_move(ChainState& st, const SweepContext& ctx, Rng& rng, MoveCounters& mc,
                 double beta, double current, double sd, double lo, double hi, Set&& set) {
  ++mc.proposed;
  const double proposal = rng.trunc_normal(current, sd, lo, hi);
  const double correction =
      truncnorm_log_mass(current, sd, lo, hi) - truncnorm_log_mass(proposal, sd, lo, hi);
  ChainState cand = st;
  set(cand.params, proposal);
  refresh_density(cand, ctx);
  const double lp = tempered_target(cand, beta);
  if (lp == kNegInf) return;  // out of region, auto-reject
  const double log_ratio = lp - tempered_target(st, beta) + correction;
  if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
    st = cand;
    ++mc.accepted;
  }
}

void world_move(ChainState& st, const SweepContext& ctx, Rng& rng, MoveCounters& mc,
                double beta) {
  ++mc.proposed;
  ChainState cand = st;
  cand.params.world = opposite(cand.params.world);
  refresh_density(cand, ctx);
  const double lp = tempered_target(cand, beta);
  if (lp == kNegInf) return;
  const double log_ratio = lp - tempered_target(st, beta);
  if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
    st = cand;
    ++mc.accepted;
  }
}

void sweep(ChainState& st, const SweepContext& ctx, Rng& rng, MoveCounters& continuous,
           MoveCounters& world, double beta = 1.0) {
  const ProposalSds& sds = ctx.sds;
  scalar_move(st, ctx, rng, continuous, beta, st.params.psi, sds.psi, 0.0, 1.0,
              [](QuestionParams& p, double v) { p.psi = v; });
  scalar_move(st, ctx, rng, continuous, beta, st.params.signal.a_given_A, sds.signal, 0.0,
              1.0, [](QuestionParams& p, double v) { p.signal.a_given_A = v; });
  scalar_move(st, ctx, rng, continuous, beta, st.params.signal.a_given_B, sds.signal, 0.0,
              1.0, [](QuestionParams& p, double v) { p.signal.a_given_B = v; });
  if (!ctx.fix_vote)
    scalar_move(st, ctx, rng, continuous, beta, st.params.noise.vote_temp, sds.vote_noise,
                0.0, kPosInf, [](QuestionParams& p, double v) { p.noise.vote_temp = v; });
  if (!ctx.fix_pred)
    scalar_move(st, ctx, rng, continuous, beta, st.params.noise.pred_var, sds.pred_noise,
                0.0, 0.5, [](QuestionParams& p, double v) { p.noise.pred_var = v; });
  if (ctx.sample_conf_noise && !ctx.fix_conf)
    scalar_move(st, ctx, rng, continuous, beta, *st.params.noise.conf_var, sds.conf_noise,
                0.0, 0.5, [](QuestionParams& p, double v) { p.noise.conf_var = v; });
  world_move(st, ctx, rng, world, beta);
}

struct QuestionRecorder {
  double prob_a_sum = 0.0;
  long prob_a_count = 0;
  // one slot per chain
  std::vector<std::vector<double>> psi, s_a, s_b, nv, nm, nc, world;

  explicit QuestionRecorder(int n_chains)
      : psi(n_chains), s_a(n_chains), s_b(n_chains), nv(n_chains), nm(n_chains),
        nc(n_chains), world(n_chains) {}

  void record_world(const ChainState& st) {
    prob_a_sum += indicator_a(st.params.world);
    ++prob_a_count;
  }

  void record_params(const ChainState& st, int chain) {
    psi[chain].push_back(st.params.psi);
    s_a[chain].push_back(st.params.signal.a_given_A);
    s_b[chain].push_back(st.params.signal.a_given_B);
    nv[chain].push_back(st.params.noise.vote_temp);
    nm[chain].push_back(st.params.noise.pred_var);
    if (st.params.noise.conf_var) nc[chain].push_back(*st.params.noise.conf_var);
    world[chain].push_back(indicator_a(st.params.world));
  }
};

QuestionSummary summarize_question(const std::string& id, const QuestionRecorder& rec,
                                   const MoveCounters& continuous, const MoveCounters& world,
                                   bool has_conf) {
  QuestionSummary s;
  s.id = id;
  s.prob_a = rec.prob_a_count > 0 ? rec.prob_a_sum / static_cast<double>(rec.prob_a_count) : 0.5;
  s.psi = summarize_samples(rec.psi);
  s.s_a = summarize_samples(rec.s_a);
  s.s_b = summarize_samples(rec.s_b);
  s.vote_noise = summarize_samples(rec.nv);
  s.pred_noise = summarize_samples(rec.nm);
  s.has_conf_noise = has_conf;
  if (has_conf) s.conf_noise = summarize_samples(rec.nc);
  s.accept_continuous = continuous.rate();
  s.accept_world = world.rate();
  return s;
}

QuestionTrace make_trace(const QuestionRecorder& rec, const MoveCounters& continuous,
                         const MoveCounters& world) {
  QuestionTrace t;
  t.psi.chains = rec.psi;
  t.s_a.chains = rec.s_a;
  t.s_b.chains = rec.s_b;
  t.vote_noise.chains = rec.nv;
  t.pred_noise.chains = rec.nm;
  t.conf_noise.chains = rec.nc;
  t.world.chains = rec.world;
  t.accept_continuous = continuous.rate();
  t.accept_world = world.rate();
  return t;
}

SweepContext make_context(const QuestionData& data, const Eigen::VectorXd& expertise,
                          const ChainConfig& cfg) {
  SweepContext ctx;
  ctx.data = &data;
  ctx.expertise = &expertise;
  ctx.flags.use_confidences = cfg.use_confidences && data.confidences.size() > 0;
  ctx.flags.expertise_aware = cfg.expertise_aware;
  ctx.sample_conf_noise = ctx.flags.use_confidences;
  ctx.fix_vote = cfg.fixed_vote_noise.has_value();
  ctx.fix_pred = cfg.fixed_pred_noise.has_value();
  ctx.fix_conf = cfg.fixed_conf_noise.has_value();
  ctx.sds = cfg.proposal_sds;
  return ctx;
}

void check_config(const ChainConfig& cfg) {
  if (cfg.n_burnin >= cfg.n_steps)
    throw std::invalid_argument("chain config: burn-in must be smaller than step count");
  if (cfg.n_chains < 1 || cfg.thin < 1)
    throw std::invalid_argument("chain config: chains and thin must be positive");
  const ProposalSds& s = cfg.proposal_sds;
  if (s.psi <= 0 || s.signal <= 0 || s.vote_noise <= 0 || s.pred_noise <= 0 ||
      s.conf_noise <= 0 || s.expertise <= 0)
    throw std::invalid_argument("chain config: proposal sds must be positive");
  if (cfg.n_temps < 1 || cfg.temp_ratio <= 0.0 || cfg.temp_ratio >= 1.0)
    throw std::invalid_argument("chain config: bad tempering ladder");
}

}  // namespace

ScalarSummary summarize_samples(const std::vector<std::vector<double>>& chains) {
  ScalarSummary s;
  std::vector<double> pooled;
  for (const auto& c : chains) pooled.insert(pooled.end(), c.begin(), c.end());
  if (pooled.empty()) return s;
  double sum = 0.0;
  for (const double v : pooled) sum += v;
  s.mean = sum / static_cast<double>(pooled.size());

  std::sort(pooled.begin(), pooled.end());
  auto quantile = [&pooled](double q) {
    const double pos = q * static_cast<double>(pooled.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < pooled.size() ? pooled[i] * (1.0 - frac) + pooled[i + 1] * frac
                                 : pooled[i];
  };
  s.lo90 = quantile(0.05);
  s.hi90 = quantile(0.95);

  const std::size_t len = chains.front().size();
  if (chains.size() >= 2 && len >= 10) {
    bool equal = true;
    for (const auto& c : chains) equal = equal && c.size() == len;
    if (equal) s.rhat = gelman_rubin(chains);
  }
  for (const auto& c : chains)
    if (c.size() >= 40) s.geweke_z.push_back(geweke_z(c));
  return s;
}

std::pair<PosteriorSummary, Trace> run_single_question(const QuestionData& data,
                                                       const ChainConfig& cfg,
                                                       std::uint64_t stream_tag,
                                                       const std::string& question_id) {
  check_config(cfg);
  if (data.n_votes() < 1)
    throw DatasetError("single-question inference: no non-missing votes");

  const Eigen::VectorXd expertise = Eigen::VectorXd::Zero(data.n());
  const SweepContext ctx = make_context(data, expertise, cfg);
  const Rng root(cfg.seed);

  QuestionRecorder rec(cfg.n_chains);
  std::vector<MoveCounters> cont(cfg.n_chains), world(cfg.n_chains);
  std::vector<double> world_sum(cfg.n_chains, 0.0);
  std::vector<long> world_count(cfg.n_chains, 0);

  const int n_temps = std::max(1, cfg.n_temps);
  std::vector<double> betas(n_temps, 1.0);
  for (int k = 1; k < n_temps; ++k) betas[k] = betas[k - 1] * cfg.temp_ratio;

  parallel_for(cfg.n_chains, cfg.threads, [&](Index c) {
    const int chain = static_cast<int>(c);
    const auto chain_tag = static_cast<std::uint64_t>(chain);

    // One replica per rung; only the beta = 1 rung is recorded. Swaps
    // between adjacent rungs carry states across posterior modes that
    // the random walk cannot cross at full sharpness.
    std::vector<ChainState> replicas;
    std::vector<Rng> rungs;
    std::vector<MoveCounters> hot_cont(n_temps), hot_world(n_temps);
    for (int k = 0; k < n_temps; ++k) {
      Rng init_rng = root.child(kTagInit, stream_tag, chain_tag, static_cast<std::uint64_t>(k));
      replicas.push_back(init_state(ctx, cfg, init_rng));
      rungs.push_back(root.child(kTagSingle, stream_tag, chain_tag,
                                 static_cast<std::uint64_t>(k)));
    }
    Rng swap_rng = root.child(kTagSwap, stream_tag, chain_tag);

    for (long step = 0; step < cfg.n_steps; ++step) {
      sweep(replicas[0], ctx, rungs[0], cont[chain], world[chain], betas[0]);
      for (int k = 1; k < n_temps; ++k)
        sweep(replicas[k], ctx, rungs[k], hot_cont[k], hot_world[k], betas[k]);
      for (int k = static_cast<int>(step % 2); k + 1 < n_temps; k += 2) {
        const double log_ratio =
            (betas[k] - betas[k + 1]) * (replicas[k + 1].log_lik - replicas[k].log_lik);
        if (log_ratio >= 0.0 || std::log(swap_rng.uniform()) < log_ratio)
          std::swap(replicas[k], replicas[k + 1]);
      }
      if (step < cfg.n_burnin) continue;
      world_sum[chain] += indicator_a(replicas[0].params.world);
      ++world_count[chain];
      if ((step - cfg.n_burnin) % cfg.thin == 0) rec.record_params(replicas[0], chain);
    }
  });

  MoveCounters cont_total, world_total;
  for (int c = 0; c < cfg.n_chains; ++c) {
    cont_total.proposed += cont[c].proposed;
    cont_total.accepted += cont[c].accepted;
    world_total.proposed += world[c].proposed;
    world_total.accepted += world[c].accepted;
    rec.prob_a_sum += world_sum[c];
    rec.prob_a_count += world_count[c];
  }

  PosteriorSummary summary;
  summary.questions.push_back(
      summarize_question(question_id, rec, cont_total, world_total, ctx.sample_conf_noise));
  Trace trace;
  trace.questions.push_back(make_trace(rec, cont_total, world_total));
  return {std::move(summary), std::move(trace)};
}

std::pair<PosteriorSummary, Trace> run_single_over_study(const ResponseDataset& ds,
                                                         const ChainConfig& cfg) {
  PosteriorSummary summary;
  Trace trace;
  summary.questions.resize(ds.n_questions());
  trace.questions.resize(ds.n_questions());
  std::vector<QuestionData> slices;
  slices.reserve(ds.n_questions());
  for (Index q = 0; q < ds.n_questions(); ++q) slices.push_back(QuestionData::slice(ds, q));

  ChainConfig inner = cfg;
  inner.threads = 1;  // parallelism lives at the question level here
  parallel_for(ds.n_questions(), cfg.threads, [&](Index q) {
    auto [qs, qt] =
        run_single_question(slices[q], inner, static_cast<std::uint64_t>(q), ds.question_ids[q]);
    summary.questions[q] = std::move(qs.questions[0]);
    trace.questions[q] = std::move(qt.questions[0]);
  });
  return {std::move(summary), std::move(trace)};
}

std::pair<PosteriorSummary, Trace> run_multi_question(const ResponseDataset& ds,
                                                      const ChainConfig& cfg) {
  check_config(cfg);
  if (ds.n_questions() < 2)
    throw DatasetError("multi-question inference: needs at least two questions");
  const MultiSchedule& sched = cfg.multi;
  if (sched.burnin_loops >= sched.n_loops)
    throw std::invalid_argument("chain config: burn-in loops must be fewer than loops");

  const Index q_count = ds.n_questions();
  const Index n = ds.n_respondents();
  std::vector<QuestionData> data;
  data.reserve(q_count);
  for (Index q = 0; q < q_count; ++q) data.push_back(QuestionData::slice(ds, q));
  for (Index q = 0; q < q_count; ++q)
    if (data[q].n_votes() < 1)
      throw DatasetError("multi-question inference: question " + std::to_string(q) +
                         " has no votes");

  const Rng root(cfg.seed);
  std::vector<QuestionRecorder> recorders(q_count, QuestionRecorder(cfg.n_chains));
  std::vector<MoveCounters> cont(q_count), world(q_count);
  MoveCounters expertise_moves;
  std::vector<std::vector<std::vector<double>>> exp_samples(
      n, std::vector<std::vector<double>>(cfg.n_chains));
  Eigen::VectorXd exp_sum = Eigen::VectorXd::Zero(n);
  long exp_count = 0;

  for (int chain = 0; chain < cfg.n_chains; ++chain) {
    const auto chain_tag = static_cast<std::uint64_t>(chain);

    // Chain state: per-question params plus the shared expertise vector.
    Eigen::VectorXd expertise(n);
    {
      Rng er = root.child(kTagExpInit, chain_tag);
      for (Index r = 0; r < n; ++r) expertise[r] = er.uniform();
    }
    std::vector<SweepContext> ctx;
    ctx.reserve(q_count);
    for (Index q = 0; q < q_count; ++q) ctx.push_back(make_context(data[q], expertise, cfg));

    std::vector<ChainState> states(q_count);
    parallel_for(q_count, cfg.threads, [&](Index q) {
      Rng ir = root.child(kTagInit, chain_tag, static_cast<std::uint64_t>(q));
      states[q] = init_state(ctx[q], cfg, ir);
    });
    std::vector<StateBlock> blocks(q_count);

    // Per-(question, respondent) log terms at the current expertise,
    // kept in sync so respondent sweeps cost O(Q) per proposal.
    Eigen::MatrixXd terms(q_count, n);
    Eigen::VectorXd cand_terms(q_count);

    for (int loop = 0; loop < sched.n_loops; ++loop) {
      const bool keep = loop >= sched.burnin_loops;
      const auto loop_tag = static_cast<std::uint64_t>(loop);

      parallel_for(q_count, cfg.threads, [&](Index q) {
        Rng rng = root.child(kTagQuestion, chain_tag, loop_tag, static_cast<std::uint64_t>(q));
        ChainState& st = states[q];
        // Expertise moved since the last block; refresh the density.
        refresh_density(st, ctx[q]);
        for (int step = 0; step < sched.question_steps; ++step) {
          sweep(st, ctx[q], rng, cont[q], world[q]);
          if (!keep) continue;
          recorders[q].record_world(st);
          if (step % cfg.thin == 0) recorders[q].record_params(st, chain);
        }
        blocks[q] = make_state_block(st.params, ctx[q].flags);
        for (Index r = 0; r < n; ++r) {
          const double conf =
              data[q].confidences.size() > 0 ? data[q].confidences[r] : std::nan("");
          terms(q, r) = respondent_log_term(st.params, blocks[q], data[q].votes[r],
                                            data[q].predictions[r], conf, expertise[r],
                                            ctx[q].flags);
        }
      });

      Rng rng = root.child(kTagRespondent, chain_tag, loop_tag);
      const double sd = cfg.proposal_sds.expertise;
      for (int step = 0; step < sched.respondent_steps; ++step) {
        for (Index r = 0; r < n; ++r) {
          ++expertise_moves.proposed;
          const double current = expertise[r];
          const double proposal = rng.trunc_normal(current, sd, 0.0, 1.0);
          const double correction = truncnorm_log_mass(current, sd, 0.0, 1.0) -
                                    truncnorm_log_mass(proposal, sd, 0.0, 1.0);
          double delta = correction;
          for (Index q = 0; q < q_count; ++q) {
            const double conf =
                data[q].confidences.size() > 0 ? data[q].confidences[r] : std::nan("");
            cand_terms[q] =
                respondent_log_term(states[q].params, blocks[q], data[q].votes[r],
                                    data[q].predictions[r], conf, proposal, ctx[q].flags);
            delta += cand_terms[q] - terms(q, r);
          }
          if (delta >= 0.0 || (delta > kNegInf && std::log(rng.uniform()) < delta)) {
            expertise[r] = proposal;
            terms.col(r) = cand_terms;
            ++expertise_moves.accepted;
          }
        }
        if (keep) {
          exp_sum += expertise;
          ++exp_count;
          if (step % cfg.thin == 0)
            for (Index r = 0; r < n; ++r) exp_samples[r][chain].push_back(expertise[r]);
        }
      }
    }
  }

  PosteriorSummary summary;
  Trace trace;
  for (Index q = 0; q < q_count; ++q) {
    const bool has_conf = cfg.use_confidences && data[q].confidences.size() > 0;
    summary.questions.push_back(
        summarize_question(ds.question_ids[q], recorders[q], cont[q], world[q], has_conf));
    trace.questions.push_back(make_trace(recorders[q], cont[q], world[q]));
  }
  summary.expertise_mean =
      exp_count > 0 ? Eigen::VectorXd(exp_sum / static_cast<double>(exp_count))
                    : Eigen::VectorXd::Zero(n);
  for (Index r = 0; r < n; ++r) {
    summary.expertise.push_back(summarize_samples(exp_samples[r]));
    ScalarSamples s;
    s.chains = exp_samples[r];
    trace.expertise.push_back(std::move(s));
  }
  summary.accept_expertise = expertise_moves.rate();
  trace.accept_expertise = expertise_moves.rate();
  return {std::move(summary), std::move(trace)};
}

}  // namespace pwm
