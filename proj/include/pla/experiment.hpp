// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment configuration: one JSON document with a section per module.
//
//   {
//     "channel":    {"model": "bernoulli_differential", "rho": 0.7, "L": 56,
//                    "seed": 1, "trace": "path.csv"},
//     "protocol":   {"m": 1, "S": 56, "tol": 1e-9, "rounds": 10,
//                    "phase_noise_kappa": 0},
//     "attack":     {"N": 1000, "trials": 100, "engine": "enumerate",
//                    "replay": {"z": [...], "key": [...]}},
//     "analytics":  {"trials": 0, "rho": [...], "N": [...], "m": [...],
//                    "complete_levels": false},
//     "randomness": {"alpha": 0.01, "concat": 1, "min_length": 100,
//                    "trials": 1000},
//     "guideline":  {"p_benchmark": 1e-4, "grid_step": 0.01,
//                    "mode": "analytic", "rho": 0.7, "min_accept": 0,
//                    "trials": 2000},
//     "output":     {"directory": "out", "formats": ["csv", "jsonl"]}
//   }
//
// Every key is optional; unknown keys are rejected.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pla/analytics.hpp"
#include "pla/channel.hpp"
#include "pla/guideline.hpp"
#include "pla/protocol.hpp"
#include "pla/randomness.hpp"

namespace pla {

/// A fixed Eve observation and true key, replayed instead of simulated.
struct ReplayFixture {
  PhaseVector z;
  std::vector<std::uint8_t> key;
};

struct AttackSettings {
  std::uint64_t N = 1000;
  std::uint64_t trials = 100;
  AttackEngine engine = AttackEngine::enumerate;
  std::optional<ReplayFixture> replay;
};

struct AnalyticsSettings {
  /// Monte Carlo trials per sweep point; 0 skips simulation.
  std::uint64_t trials = 0;
  std::vector<double> rho;
  std::vector<std::uint64_t> N;
  std::vector<unsigned> m;
  /// Round each budget down to the largest complete-level budget.
  bool complete_levels = false;
};

struct GuidelineSettings {
  GuidelineConfig config;
  std::optional<double> rho;
  std::uint64_t trials = 2000;
};

struct OutputSettings {
  std::filesystem::path directory = "out";
  bool csv = true;
  bool jsonl = true;
};

struct ExperimentConfig {
  ChannelModelConfig channel;
  std::string trace_path;
  unsigned m = 1;
  std::size_t S = 56;
  ProtocolOptions protocol;
  std::uint64_t rounds = 10;
  AttackSettings attack;
  AnalyticsSettings analytics;
  RandomnessTestConfig randomness;
  std::uint64_t randomness_trials = 1000;
  GuidelineSettings guideline;
  OutputSettings output;
  /// 0 selects the hardware concurrency.
  unsigned threads = 0;

  std::size_t L() const noexcept { return channel.num_subcarriers; }
  KeyPhaseMapping mapping() const { return KeyPhaseMapping{m}; }

  /// Cross-section checks (S = m * L and every module's own constraints).
  void validate() const;
};

ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace pla
