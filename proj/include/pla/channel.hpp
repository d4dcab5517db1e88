// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Correlated OFDM subchannel generation, trace replay, and correlation
// statistics.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pla/core.hpp"
#include "pla/rng.hpp"

namespace pla {

enum class ChannelModel {
  /// Differential phase bits flip independently with probability (1 - rho)/2.
  bernoulli_differential,
  /// g_{l+1} = rho g_l + sqrt(1 - rho^2) w_l over circular complex Gaussians.
  ar1_complex_gaussian,
  /// Identical response on every subcarrier (rho = 1).
  flat_fading,
  trace_replay,
};

std::string_view to_string(ChannelModel model) noexcept;
ChannelModel parse_channel_model(std::string_view name);

struct ChannelModelConfig {
  ChannelModel model = ChannelModel::bernoulli_differential;
  double rho = 0.0;
  std::size_t num_subcarriers = 56;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TraceSource {
  std::string path;
  std::string bandwidth;  // free-form label, e.g. "20MHz"; empty if unknown
  std::size_t subcarriers = 0;
};

/// Replay container for externally collected channel responses. All
/// snapshots share one subcarrier count. Not synchronized: next() must be
/// driven by a single consumer.
class TraceStore {
 public:
  TraceStore() = default;
  TraceStore(std::vector<ChannelSnapshot> snapshots, TraceSource source);

  std::size_t size() const noexcept { return snapshots_.size(); }
  bool empty() const noexcept { return snapshots_.empty(); }
  std::size_t subcarriers() const noexcept { return source_.subcarriers; }
  const TraceSource& source() const noexcept { return source_; }
  const std::vector<ChannelSnapshot>& snapshots() const noexcept { return snapshots_; }

  const ChannelSnapshot& at(std::size_t index) const;

  /// Round-robin cursor.
  const ChannelSnapshot& next();

 private:
  std::vector<ChannelSnapshot> snapshots_;
  TraceSource source_;
  std::size_t cursor_ = 0;
};

/// Draws one snapshot from a synthetic model. In trace_replay mode the next
/// snapshot of `store` is returned instead; a null or empty store is an error.
ChannelSnapshot sample_channel(const ChannelModelConfig& cfg, Rng& rng,
                               TraceStore* store = nullptr);

/// Index-addressed channel source for parallel experiments. Synthetic models
/// draw from the (seed, stream, index) substream; replay returns snapshot
/// index % size, so results never depend on scheduling.
class ChannelSource {
 public:
  explicit ChannelSource(ChannelModelConfig cfg,
                         std::shared_ptr<const TraceStore> store = nullptr);

  const ChannelModelConfig& config() const noexcept { return cfg_; }
  std::size_t subcarriers() const noexcept;

  ChannelSnapshot draw(Stream stream, std::uint64_t index) const;

 private:
  ChannelModelConfig cfg_;
  std::shared_ptr<const TraceStore> store_;
};

/// Pooled Pearson correlation between adjacent-subcarrier complex gains:
/// Re of the normalized conjugate cross-moment, over every adjacent pair of
/// every snapshot.
double estimate_correlation(std::span<const ChannelSnapshot> snapshots);

struct TransitionEstimate {
  double probability = 0.0;  // fraction of differential phase bits equal to 1
  double rho_eff = 1.0;      // 1 - 2 * probability
  std::uint64_t flips = 0;
  std::uint64_t pairs = 0;
};

TransitionEstimate estimate_transition_probability(std::span<const ChannelSnapshot> snapshots);
TransitionEstimate estimate_transition_probability(const ChannelSnapshot& snapshot);

// Trace CSV: `snapshot_id,subcarrier_index,amplitude,phase_radians`.
// Lines starting with '#' are comments; `# bandwidth=<label>` sets metadata.

TraceStore read_trace_csv(std::istream& in, std::string path_label = "<stream>");
TraceStore read_trace_csv(const std::string& path);

void write_trace_csv(std::ostream& out, std::span<const ChannelSnapshot> snapshots,
                     std::string_view bandwidth = {});

}  // namespace pla
