// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/guideline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pla/error.hpp"
#include "pla/parallel.hpp"
#include "pla/protocol.hpp"

namespace pla {

std::string_view to_string(GuidelineMode mode) noexcept {
  return mode == GuidelineMode::analytic ? "analytic" : "empirical";
}

GuidelineMode parse_guideline_mode(std::string_view name) {
  if (name == "analytic") return GuidelineMode::analytic;
  if (name == "empirical") return GuidelineMode::empirical;
  fail(ErrorKind::config, "unknown guideline mode '" + std::string(name) + "'");
}

void GuidelineConfig::validate() const {
  require(p_benchmark > 0.0 && p_benchmark <= 1.0, ErrorKind::invalid_argument,
          "p_benchmark must lie in (0, 1]");
  require(N >= 1, ErrorKind::invalid_argument, "budget must be at least 1");
  require(grid_step > 0.0 && grid_step <= 0.5, ErrorKind::invalid_argument,
          "grid step must lie in (0, 0.5]");
  require(min_accept >= 0.0 && min_accept < 1.0, ErrorKind::invalid_argument,
          "acceptance floor must lie in [0, 1)");
}

double eve_success_probability(double p_accept, double p_attack) {
  require(p_accept >= 0.0 && p_accept <= 1.0 && p_attack >= 0.0 && p_attack <= 1.0,
          ErrorKind::domain, "probabilities must lie in [0, 1]");
  return p_accept * p_attack;
}

double GuidelineEnsemble::rho_eff() const {
  std::uint64_t flips = 0, pairs = 0;
  for (const auto& s : samples) {
    flips += s.flips;
    pairs += s.pairs;
  }
  if (pairs == 0) return 0.0;
  return 1.0 - 2.0 * static_cast<double>(flips) / static_cast<double>(pairs);
}

GuidelineEnsemble sample_guideline_ensemble(const ChannelSource& channels,
                                            const KeyPhaseMapping& mapping,
                                            const RandomnessTestConfig& test_cfg,
                                            AttackBudget budget, std::uint64_t trials,
                                            const EnsembleOptions& options) {
  test_cfg.validate();
  require(trials >= 1, ErrorKind::invalid_argument, "at least one trial is required");
  GuidelineEnsemble ensemble;
  ensemble.subcarriers = channels.subcarriers();
  ensemble.m = mapping.bits_per_subkey();
  ensemble.samples.resize(trials);
  const std::size_t S = ensemble.subcarriers * ensemble.m;
  const std::uint64_t seed = channels.config().seed;
  const std::size_t extra = test_cfg.concat_snapshots - 1;

  parallel_for(trials, options.threads, [&](std::uint64_t i) {
    const SecretKey key = random_key(S, seed, i);
    const RoundResult round = run_authentication_round(channels, key, mapping, options.protocol, i);

    std::vector<ChannelSnapshot> group{round.transcript.h};
    for (std::size_t c = 0; c < extra; ++c) {
      group.push_back(channels.draw(Stream::test, i * extra + c));
    }
    const TestResult test = frequency_test(channel_to_bits(group, mapping), test_cfg);

    AttackReport report;
    if (options.engine == AttackEngine::rank) {
      report = predict_attack_outcome(round.observation, key, mapping, budget);
    } else if (ensemble.m == 1) {
      report = run_mdlg(round.observation, equality_oracle(key), budget);
    } else {
      report = run_m_mdlg(round.observation, mapping, equality_oracle(key), budget);
    }

    const TransitionEstimate t = estimate_transition_probability(round.transcript.h);
    auto& s = ensemble.samples[i];
    s.p_value = test.p_value;
    s.attack_success = report.success;
    s.rho_eff = t.rho_eff;
    s.flips = t.flips;
    s.pairs = t.pairs;
  });
  return ensemble;
}

std::vector<double> alpha_grid(double step) {
  require(step > 0.0 && step <= 0.5, ErrorKind::invalid_argument, "grid step must lie in (0, 0.5]");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) grid.push_back(std::min(1.0, k * step));
  return grid;
}

double GuidelineResult::strictness() const noexcept {
  return feasible ? alpha_star : std::numeric_limits<double>::infinity();
}

GuidelineResult optimize_alpha(const GuidelineConfig& cfg, const GuidelineEnsemble& ensemble,
                               std::optional<double> rho) {
  cfg.validate();
  require(!ensemble.samples.empty(), ErrorKind::invalid_argument, "empty guideline ensemble");
  const std::size_t S = ensemble.subcarriers * ensemble.m;
  const auto trials = static_cast<double>(ensemble.samples.size());

  GuidelineResult result;
  result.mode = cfg.mode;
  result.rho_used = std::clamp(rho.value_or(ensemble.rho_eff()), 0.0, 1.0);
  result.p_attack_analytic =
      p_m_mdlg(AnalyticQuery::m_ary(S, ensemble.m, result.rho_used, cfg.N)).value;
  std::uint64_t hits = 0;
  for (const auto& s : ensemble.samples) hits += s.attack_success ? 1 : 0;
  result.p_attack_unconditional_empirical = static_cast<double>(hits) / trials;

  for (double alpha : alpha_grid(cfg.grid_step)) {
    std::uint64_t accepted = 0, joint = 0;
    for (const auto& s : ensemble.samples) {
      if (s.p_value > alpha) {
        ++accepted;
        if (s.attack_success) ++joint;
      }
    }
    GuidelineGridPoint g;
    g.alpha = alpha;
    g.p_accept = static_cast<double>(accepted) / trials;
    if (cfg.mode == GuidelineMode::analytic) {
      g.p_attack = result.p_attack_analytic;
      g.p_eve = eve_success_probability(g.p_accept, g.p_attack);
    } else {
      g.p_attack = accepted > 0 ? static_cast<double>(joint) / static_cast<double>(accepted) : 0.0;
      g.p_eve = static_cast<double>(joint) / trials;
    }
    g.feasible = g.p_accept > cfg.min_accept && g.p_eve <= cfg.p_benchmark;
    if (g.feasible && !result.feasible) {
      result.feasible = true;
      result.alpha_star = g.alpha;
      result.achieved_p_accept = g.p_accept;
      result.achieved_eve_success = g.p_eve;
    }
    result.grid.push_back(g);
  }
  return result;
}

}  // namespace pla
