// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment commands. Each one reads an ExperimentConfig, writes its CSV
// (and optional JSONL) files into the output directory, and returns the
// paths plus a one-line human summary. Output bytes depend only on the
// config and seed, never on the thread count.
//
// CSV files start with '#' comment lines recording the command, the root
// seed and the substream ids; trailing '# summary' lines carry aggregates.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pla/channel.hpp"
#include "pla/experiment.hpp"

namespace pla {

struct CommandResult {
  std::vector<std::filesystem::path> outputs;
  std::string summary;
};

/// transcripts.csv: round_id,seed,subcarrier,theta,beta,phi,z,verified
CommandResult cmd_simulate(const ExperimentConfig& cfg);

/// attack.csv: trial_id,seed,rho,L,m,N,success,candidates_tried,n_reached
CommandResult cmd_attack(const ExperimentConfig& cfg);

/// analytic.csv, closed-form only:
/// rho,L,S,m,N,p_analytic,log10_p_analytic,p_empirical,stderr,trials
CommandResult cmd_analytic(const ExperimentConfig& cfg);

/// sweep.csv: same columns as analytic.csv with Monte Carlo estimates filled.
CommandResult cmd_sweep(const ExperimentConfig& cfg);

/// randomness.csv: snapshot_id,n,ones,p_value,alpha,accepted. Tests the
/// trace at `trace_path` (or the config's trace) when given, otherwise
/// synthetic snapshots.
CommandResult cmd_test_randomness(const ExperimentConfig& cfg,
                                  std::optional<std::filesystem::path> trace_path = std::nullopt);

/// guideline.csv: alpha,p_accept,p_mdlg_mode,p_eve,feasible
CommandResult cmd_optimize_alpha(const ExperimentConfig& cfg);

struct TraceSummary {
  std::string source;
  std::string bandwidth;
  std::size_t snapshots = 0;
  std::size_t subcarriers = 0;
  double transition_probability = 0.0;
  double rho_eff = 0.0;
  /// Absent for a single snapshot or a degenerate (constant) trace.
  std::optional<double> correlation;
};

TraceSummary summarize_trace(const TraceStore& store);

/// trace_summary.csv:
/// source,bandwidth,snapshots,subcarriers,transition_probability,rho_eff,correlation
CommandResult cmd_ingest_trace(const ExperimentConfig& cfg, const std::filesystem::path& path);

/// Channel source for the config, loading the trace for trace_replay.
ChannelSource make_channel_source(const ExperimentConfig& cfg);

}  // namespace pla
