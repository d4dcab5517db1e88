// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// When is PLA safe to use? Bob gates every round on a randomness test with
// threshold alpha. Eve wins only if the test accepts and her attack succeeds,
// so P(Eve) = P(accept) * P(attack). The optimizer picks the loosest alpha
// (maximum acceptance) that keeps P(Eve) under a benchmark.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pla/analytics.hpp"
#include "pla/attack.hpp"
#include "pla/channel.hpp"
#include "pla/randomness.hpp"

namespace pla {

enum class GuidelineMode {
  /// Unconditional closed-form attack success times empirical acceptance.
  analytic,
  /// Both factors measured on the ensemble; attack success is conditional
  /// on the snapshots the test accepted.
  empirical,
};

std::string_view to_string(GuidelineMode mode) noexcept;
GuidelineMode parse_guideline_mode(std::string_view name);

struct GuidelineConfig {
  double p_benchmark = 1e-4;
  std::uint64_t N = 1000;
  double grid_step = 0.01;
  GuidelineMode mode = GuidelineMode::analytic;
  /// A grid point is only usable if its acceptance exceeds this floor.
  double min_accept = 0.0;

  void validate() const;
};

double eve_success_probability(double p_accept, double p_attack);

/// One simulated authentication round as the guideline sees it.
struct EnsembleSample {
  double p_value = 0.0;
  bool attack_success = false;
  double rho_eff = 0.0;
  std::uint64_t flips = 0;
  std::uint64_t pairs = 0;
};

struct GuidelineEnsemble {
  std::size_t subcarriers = 0;
  unsigned m = 1;
  std::vector<EnsembleSample> samples;

  /// Pooled 1 - 2 * (differential flip rate) over all samples.
  double rho_eff() const;
};

struct EnsembleOptions {
  unsigned threads = 1;
  AttackEngine engine = AttackEngine::rank;
  ProtocolOptions protocol{};
};

/// Runs `trials` rounds. The randomness test sees the same Alice-Bob channel
/// the attack is mounted against.
GuidelineEnsemble sample_guideline_ensemble(const ChannelSource& channels,
                                            const KeyPhaseMapping& mapping,
                                            const RandomnessTestConfig& test_cfg,
                                            AttackBudget budget, std::uint64_t trials,
                                            const EnsembleOptions& options = {});

struct GuidelineGridPoint {
  double alpha = 0.0;
  double p_accept = 0.0;
  double p_attack = 0.0;  // the mode's attack-success factor
  double p_eve = 0.0;
  bool feasible = false;
};

struct GuidelineResult {
  /// False means no grid point works: reject PLA entirely.
  bool feasible = false;
  double alpha_star = 0.0;  // meaningful only when feasible
  double achieved_p_accept = 0.0;
  double achieved_eve_success = 0.0;
  GuidelineMode mode = GuidelineMode::analytic;
  double rho_used = 0.0;
  double p_attack_analytic = 0.0;
  double p_attack_unconditional_empirical = 0.0;
  std::vector<GuidelineGridPoint> grid;

  /// alpha_star, or +infinity when PLA is rejected; orders decisions from
  /// loosest to strictest.
  double strictness() const noexcept;
};

/// Grid search over alpha in {0, step, ..., 1}. Returns the smallest alpha
/// whose grid point is feasible. `rho` feeds the analytic attack factor;
/// without it the ensemble's rho_eff is used.
GuidelineResult optimize_alpha(const GuidelineConfig& cfg, const GuidelineEnsemble& ensemble,
                               std::optional<double> rho = std::nullopt);

/// The alpha grid the optimizer walks.
std::vector<double> alpha_grid(double step);

}  // namespace pla
