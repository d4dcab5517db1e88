// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "pla/analytics.hpp"
#include "pla/attack.hpp"
#include "pla/diagnostics.hpp"
#include "pla/error.hpp"
#include "pla/guideline.hpp"
#include "pla/parallel.hpp"
#include "pla/protocol.hpp"
#include "pla/randomness.hpp"

namespace pla {
namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, std::string_view command, const ExperimentConfig& cfg)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    require(out_.good(), ErrorKind::io, "cannot write '" + path.string() + "'");
    out_ << "# pla " << command << " seed=" << cfg.channel.seed << " streams=";
    constexpr Stream kStreams[] = {Stream::channel, Stream::eve_channel, Stream::protocol,
                                   Stream::key,     Stream::attack,      Stream::test,
                                   Stream::noise};
    bool first = true;
    for (Stream s : kStreams) {
      out_ << (first ? "" : ",") << to_string(s) << ':' << static_cast<std::uint64_t>(s);
      first = false;
    }
    out_ << '\n';
  }

  std::ostream& stream() { return out_; }

  void close() {
    out_.flush();
    require(out_.good(), ErrorKind::io, "write to '" + path_.string() + "' failed");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

fs::path prepare_output(const ExperimentConfig& cfg, std::string_view file) {
  std::error_code ec;
  fs::create_directories(cfg.output.directory, ec);
  require(!ec, ErrorKind::io,
          "cannot create output directory '" + cfg.output.directory.string() + "': " + ec.message());
  return cfg.output.directory / file;
}

AttackReport attack_once(const EveObservation& obs, const SecretKey& key,
                         const KeyPhaseMapping& mapping, AttackBudget budget, AttackEngine engine) {
  if (engine == AttackEngine::rank) return predict_attack_outcome(obs, key, mapping, budget);
  if (mapping.bits_per_subkey() == 1) return run_mdlg(obs, equality_oracle(key), budget);
  return run_m_mdlg(obs, mapping, equality_oracle(key), budget);
}

std::string attack_row(std::uint64_t trial, const ExperimentConfig& cfg, std::size_t L,
                       const AttackReport& r) {
  std::ostringstream row;
  row << trial << ',' << cfg.channel.seed << ',' << num(cfg.channel.rho) << ',' << L << ','
      << cfg.m << ',' << cfg.attack.N << ',' << (r.success ? 1 : 0) << ',' << r.candidates_tried
      << ',' << r.n_reached << '\n';
  return row.str();
}

struct SweepPoint {
  double rho;
  std::size_t S;
  unsigned m;
  std::uint64_t N;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg) {
  const std::vector<double> rhos = cfg.analytics.rho.empty() ? std::vector<double>{cfg.channel.rho}
                                                             : cfg.analytics.rho;
  const std::vector<std::uint64_t> budgets =
      cfg.analytics.N.empty() ? std::vector<std::uint64_t>{cfg.attack.N} : cfg.analytics.N;
  const std::vector<unsigned> ms =
      cfg.analytics.m.empty() ? std::vector<unsigned>{cfg.m} : cfg.analytics.m;
  std::vector<SweepPoint> points;
  for (unsigned m : ms) {
    if (cfg.S % m != 0 || cfg.S / m < 2) {
      warn("skipping m = " + std::to_string(m) + ": key length S = " + std::to_string(cfg.S) +
           " is not divisible into at least two sub-keys");
      continue;
    }
    for (std::uint64_t N : budgets) {
      std::uint64_t n_eff = N;
      if (cfg.analytics.complete_levels) {
        const int n_max = n_max_m_ary(cfg.S, m, N);
        if (n_max >= 0) n_eff = complete_level_budget_m_ary(cfg.S, m, n_max);
      }
      for (double rho : rhos) points.push_back({rho, cfg.S, m, n_eff});
    }
  }
  return points;
}

CommandResult write_sweep(const ExperimentConfig& cfg, bool simulate, std::string_view command,
                          std::string_view file) {
  const fs::path path = prepare_output(cfg, file);
  const auto points = sweep_points(cfg);
  const std::uint64_t trials = cfg.analytics.trials > 0 ? cfg.analytics.trials : cfg.attack.trials;

  std::shared_ptr<const TraceStore> store;
  if (simulate && cfg.channel.model == ChannelModel::trace_replay) {
    store = std::make_shared<const TraceStore>(read_trace_csv(cfg.trace_path));
  }

  CsvFile csv(path, command, cfg);
  auto& out = csv.stream();
  out << "rho,L,S,m,N,p_analytic,log10_p_analytic,p_empirical,stderr,trials\n";
  for (const auto& pt : points) {
    const Probability p = p_m_mdlg(AnalyticQuery::m_ary(pt.S, pt.m, pt.rho, pt.N));
    const std::size_t L = pt.S / pt.m;
    out << num(pt.rho) << ',' << L << ',' << pt.S << ',' << pt.m << ',' << pt.N << ',';
    out << (p.value < 1e-300 ? std::string() : num(p.value)) << ',' << num(p.log10) << ',';
    if (simulate && trials > 0) {
      ChannelModelConfig ch = cfg.channel;
      ch.rho = pt.rho;
      ch.num_subcarriers = L;
      const ChannelSource source(ch, store);
      MonteCarloOptions opts;
      opts.threads = cfg.threads;
      opts.engine = cfg.attack.engine;
      opts.protocol = cfg.protocol;
      const MonteCarloResult mc =
          monte_carlo_success(source, KeyPhaseMapping{pt.m}, AttackBudget{pt.N}, trials, opts);
      out << num(mc.rate) << ',' << num(mc.standard_error) << ',' << trials << '\n';
    } else {
      out << ",,0\n";
    }
  }
  csv.close();
  return {{path}, std::to_string(points.size()) + " points written to " + path.string()};
}

}  // namespace

ChannelSource make_channel_source(const ExperimentConfig& cfg) {
  if (cfg.channel.model != ChannelModel::trace_replay) return ChannelSource(cfg.channel);
  auto store = std::make_shared<const TraceStore>(read_trace_csv(cfg.trace_path));
  require(store->subcarriers() == cfg.L(), ErrorKind::config,
          "trace has " + std::to_string(store->subcarriers()) + " subcarriers but channel.L is " +
              std::to_string(cfg.L()));
  return ChannelSource(cfg.channel, std::move(store));
}

CommandResult cmd_simulate(const ExperimentConfig& cfg) {
  const ChannelSource source = make_channel_source(cfg);
  const KeyPhaseMapping mapping = cfg.mapping();
  std::vector<RoundResult> rounds(cfg.rounds);
  parallel_for(cfg.rounds, cfg.threads, [&](std::uint64_t i) {
    rounds[i] = run_authentication_round(source, random_key(cfg.S, cfg.channel.seed, i), mapping,
                                         cfg.protocol, i);
  });

  CommandResult result;
  const fs::path path = prepare_output(cfg, "transcripts.csv");
  CsvFile csv(path, "simulate", cfg);
  auto& out = csv.stream();
  out << "round_id,seed,subcarrier,theta,beta,phi,z,verified\n";
  std::uint64_t verified = 0;
  for (const auto& r : rounds) {
    const Transcript& t = r.transcript;
    verified += t.verified ? 1 : 0;
    for (std::size_t l = 0; l < cfg.L(); ++l) {
      out << t.round_id << ',' << t.seed << ',' << l << ',' << num(t.h.phases()[l]) << ','
          << num(t.challenge.beta[l]) << ',' << num(t.phi[l]) << ',' << num(r.observation.z[l])
          << ',' << (t.verified ? 1 : 0) << '\n';
    }
  }
  csv.close();
  result.outputs.push_back(path);

  if (cfg.output.jsonl) {
    const fs::path jpath = prepare_output(cfg, "transcripts.jsonl");
    std::ofstream jout(jpath, std::ios::binary | std::ios::trunc);
    require(jout.good(), ErrorKind::io, "cannot write '" + jpath.string() + "'");
    for (const auto& r : rounds) write_transcript_jsonl(jout, r);
    jout.flush();
    require(jout.good(), ErrorKind::io, "write to '" + jpath.string() + "' failed");
    result.outputs.push_back(jpath);
  }
  result.summary = std::to_string(cfg.rounds) + " rounds, " + std::to_string(verified) + " verified";
  return result;
}

CommandResult cmd_attack(const ExperimentConfig& cfg) {
  const KeyPhaseMapping mapping = cfg.mapping();
  const AttackBudget budget{cfg.attack.N};
  const fs::path path = prepare_output(cfg, "attack.csv");

  std::vector<std::string> rows;
  std::uint64_t successes = 0;
  std::optional<double> analytic;
  if (cfg.attack.replay) {
    const ReplayFixture& fx = *cfg.attack.replay;
    const SecretKey key(fx.key);
    const AttackReport r =
        attack_once(EveObservation{fx.z}, key, mapping, budget, cfg.attack.engine);
    successes += r.success ? 1 : 0;
    rows.push_back(attack_row(0, cfg, fx.z.size(), r));
  } else {
    const ChannelSource source = make_channel_source(cfg);
    std::vector<AttackReport> reports(cfg.attack.trials);
    parallel_for(cfg.attack.trials, cfg.threads, [&](std::uint64_t i) {
      const SecretKey key = random_key(cfg.S, cfg.channel.seed, i);
      const RoundResult round = run_authentication_round(source, key, mapping, cfg.protocol, i);
      reports[i] = attack_once(round.observation, key, mapping, budget, cfg.attack.engine);
    });
    for (std::uint64_t i = 0; i < reports.size(); ++i) {
      successes += reports[i].success ? 1 : 0;
      rows.push_back(attack_row(i, cfg, cfg.L(), reports[i]));
    }
    if (cfg.channel.model != ChannelModel::trace_replay) {
      analytic = p_m_mdlg(AnalyticQuery::m_ary(cfg.S, cfg.m, cfg.channel.rho, cfg.attack.N)).value;
    }
  }

  CsvFile csv(path, "attack", cfg);
  auto& out = csv.stream();
  out << "trial_id,seed,rho,L,m,N,success,candidates_tried,n_reached\n";
  for (const auto& row : rows) out << row;
  const auto trials = static_cast<std::uint64_t>(rows.size());
  std::string summary = std::to_string(successes) + "/" + std::to_string(trials) + " attacks succeeded";
  if (trials > 0) {
    const double rate = static_cast<double>(successes) / static_cast<double>(trials);
    out << "# summary trials=" << trials << " successes=" << successes << " rate=" << num(rate)
        << " stderr=" << num(binomial_standard_error(rate, trials));
    if (analytic) out << " p_analytic=" << num(*analytic);
    out << '\n';
    if (analytic) summary += " (analytic " + num(*analytic) + ")";
  }
  csv.close();
  return {{path}, summary};
}

CommandResult cmd_analytic(const ExperimentConfig& cfg) {
  return write_sweep(cfg, false, "analytic", "analytic.csv");
}

CommandResult cmd_sweep(const ExperimentConfig& cfg) {
  return write_sweep(cfg, true, "sweep", "sweep.csv");
}

CommandResult cmd_test_randomness(const ExperimentConfig& cfg,
                                  std::optional<fs::path> trace_path) {
  if (!trace_path && cfg.channel.model == ChannelModel::trace_replay) trace_path = cfg.trace_path;
  const KeyPhaseMapping mapping = cfg.mapping();
  const std::size_t concat = cfg.randomness.concat_snapshots;

  std::vector<TestResult> results;
  if (trace_path) {
    const TraceStore store = read_trace_csv(trace_path->string());
    const std::size_t groups = store.size() / concat;
    if (store.size() % concat != 0) {
      warn("dropping " + std::to_string(store.size() % concat) +
           " trailing snapshots that do not fill a test group");
    }
    results.resize(groups);
    parallel_for(groups, cfg.threads, [&](std::uint64_t g) {
      const std::span<const ChannelSnapshot> group(store.snapshots().data() + g * concat, concat);
      results[g] = frequency_test(channel_to_bits(group, mapping), cfg.randomness);
    });
  } else {
    const ChannelSource source = make_channel_source(cfg);
    results.resize(cfg.randomness_trials);
    parallel_for(cfg.randomness_trials, cfg.threads, [&](std::uint64_t i) {
      std::vector<ChannelSnapshot> group;
      for (std::size_t c = 0; c < concat; ++c) group.push_back(source.draw(Stream::test, i * concat + c));
      results[i] = frequency_test(channel_to_bits(group, mapping), cfg.randomness);
    });
  }
  if (!results.empty() && results.front().below_min_length) {
    warn("test sequences hold " + std::to_string(results.front().sequence_length) +
         " bits, below the recommended minimum of " +
         std::to_string(cfg.randomness.min_sequence_length));
  }

  const fs::path path = prepare_output(cfg, "randomness.csv");
  CsvFile csv(path, "test-randomness", cfg);
  auto& out = csv.stream();
  out << "snapshot_id,n,ones,p_value,alpha,accepted\n";
  std::uint64_t accepted = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    accepted += r.accepted ? 1 : 0;
    out << i << ',' << r.sequence_length << ',' << r.ones_count << ',' << num(r.p_value) << ','
        << num(cfg.randomness.alpha) << ',' << (r.accepted ? 1 : 0) << '\n';
  }
  std::string summary = std::to_string(accepted) + "/" + std::to_string(results.size()) + " accepted";
  if (!results.empty()) {
    const double rate = static_cast<double>(accepted) / static_cast<double>(results.size());
    out << "# summary trials=" << results.size() << " accepted=" << accepted
        << " rate=" << num(rate) << " stderr=" << num(binomial_standard_error(rate, results.size()))
        << '\n';
  }
  csv.close();
  return {{path}, summary};
}

CommandResult cmd_optimize_alpha(const ExperimentConfig& cfg) {
  const ChannelSource source = make_channel_source(cfg);
  EnsembleOptions opts;
  opts.threads = cfg.threads;
  opts.engine = AttackEngine::rank;
  opts.protocol = cfg.protocol;
  const GuidelineEnsemble ensemble =
      sample_guideline_ensemble(source, cfg.mapping(), cfg.randomness,
                                AttackBudget{cfg.guideline.config.N}, cfg.guideline.trials, opts);
  const GuidelineResult g = optimize_alpha(cfg.guideline.config, ensemble, cfg.guideline.rho);

  const fs::path path = prepare_output(cfg, "guideline.csv");
  CsvFile csv(path, "optimize-alpha", cfg);
  auto& out = csv.stream();
  out << "alpha,p_accept,p_mdlg_mode,p_eve,feasible\n";
  for (const auto& pt : g.grid) {
    out << num(pt.alpha) << ',' << num(pt.p_accept) << ',' << num(pt.p_attack) << ','
        << num(pt.p_eve) << ',' << (pt.feasible ? 1 : 0) << '\n';
  }
  const std::string star = g.feasible ? num(g.alpha_star) : std::string("reject_pla");
  out << "# summary alpha_star=" << star << " achieved_p_accept=" << num(g.achieved_p_accept)
      << " achieved_p_eve=" << num(g.achieved_eve_success) << " mode=" << to_string(g.mode)
      << " rho=" << num(g.rho_used) << " p_mdlg_analytic=" << num(g.p_attack_analytic)
      << " p_mdlg_empirical=" << num(g.p_attack_unconditional_empirical)
      << " trials=" << ensemble.samples.size() << '\n';
  csv.close();
  return {{path}, g.feasible ? "alpha_star = " + star : "no feasible alpha: reject PLA"};
}

TraceSummary summarize_trace(const TraceStore& store) {
  require(!store.empty(), ErrorKind::invalid_argument, "trace store is empty");
  TraceSummary s;
  s.source = store.source().path;
  s.bandwidth = store.source().bandwidth;
  s.snapshots = store.size();
  s.subcarriers = store.subcarriers();
  const TransitionEstimate t = estimate_transition_probability(store.snapshots());
  s.transition_probability = t.probability;
  s.rho_eff = t.rho_eff;
  if (store.size() >= 2) {
    try {
      s.correlation = estimate_correlation(store.snapshots());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::domain) throw;
    }
  }
  return s;
}

CommandResult cmd_ingest_trace(const ExperimentConfig& cfg, const fs::path& path) {
  const TraceStore store = read_trace_csv(path.string());
  const TraceSummary s = summarize_trace(store);
  const fs::path out_path = prepare_output(cfg, "trace_summary.csv");
  CsvFile csv(out_path, "ingest-trace", cfg);
  auto& out = csv.stream();
  out << "source,bandwidth,snapshots,subcarriers,transition_probability,rho_eff,correlation\n";
  out << s.source << ',' << s.bandwidth << ',' << s.snapshots << ',' << s.subcarriers << ','
      << num(s.transition_probability) << ',' << num(s.rho_eff) << ','
      << (s.correlation ? num(*s.correlation) : std::string()) << '\n';
  csv.close();
  std::string summary = std::to_string(s.snapshots) + " snapshots, L = " +
                        std::to_string(s.subcarriers) + ", rho_eff = " + num(s.rho_eff);
  if (s.correlation) summary += ", correlation = " + num(*s.correlation);
  return {{out_path}, summary};
}

}  // namespace pla
