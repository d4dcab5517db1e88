// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/randomness.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "pla/analytics.hpp"
#include "pla/error.hpp"
#include "pla/parallel.hpp"

namespace pla {

void RandomnessTestConfig::validate() const {
  require(alpha >= 0.0 && alpha <= 1.0, ErrorKind::invalid_argument, "alpha must lie in [0, 1]");
  require(concat_snapshots >= 1, ErrorKind::invalid_argument,
          "at least one snapshot per test is required");
}

TestResult FrequencyTest::run(std::span<const std::uint8_t> bits,
                              const RandomnessTestConfig& cfg) const {
  require(!bits.empty(), ErrorKind::invalid_argument, "frequency test needs a non-empty sequence");
  TestResult r;
  r.sequence_length = bits.size();
  for (auto b : bits) r.ones_count += (b & 1u);
  const double n = static_cast<double>(bits.size());
  const double signed_sum = 2.0 * static_cast<double>(r.ones_count) - n;
  const double s_obs = std::abs(signed_sum) / std::sqrt(n);
  r.p_value = std::erfc(s_obs / std::sqrt(2.0));
  r.accepted = r.p_value > cfg.alpha;
  r.below_min_length = bits.size() < cfg.min_sequence_length;
  return r;
}

TestResult frequency_test(std::span<const std::uint8_t> bits, const RandomnessTestConfig& cfg) {
  return FrequencyTest{}.run(bits, cfg);
}

std::vector<std::uint8_t> channel_to_bits(const ChannelSnapshot& h, const KeyPhaseMapping& mapping) {
  const SecretKey bits = inverse_map(h.phases(), mapping);
  return {bits.bits().begin(), bits.bits().end()};
}

std::vector<std::uint8_t> channel_to_bits(std::span<const ChannelSnapshot> snapshots,
                                          const KeyPhaseMapping& mapping) {
  std::vector<std::uint8_t> out;
  for (const auto& s : snapshots) {
    const auto bits = channel_to_bits(s, mapping);
    out.insert(out.end(), bits.begin(), bits.end());
  }
  return out;
}

AcceptanceEstimate p_accept_estimate(const ChannelSource& channels, const RandomnessTestConfig& cfg,
                                     std::uint64_t trials, unsigned threads,
                                     const RandomnessTest& test) {
  cfg.validate();
  require(trials >= 1, ErrorKind::invalid_argument, "at least one trial is required");
  struct Outcome {
    bool accepted = false;
    double rho_eff = 0.0;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, threads, [&](std::uint64_t i) {
    std::vector<ChannelSnapshot> group;
    group.reserve(cfg.concat_snapshots);
    for (std::size_t c = 0; c < cfg.concat_snapshots; ++c) {
      group.push_back(channels.draw(Stream::test, i * cfg.concat_snapshots + c));
    }
    outcomes[i].accepted = test.run(channel_to_bits(group), cfg).accepted;
    outcomes[i].rho_eff = estimate_transition_probability(group).rho_eff;
  });

  AcceptanceEstimate est;
  est.trials = trials;
  double sum_all = 0.0, sum_accepted = 0.0;
  for (const auto& o : outcomes) {
    sum_all += o.rho_eff;
    if (o.accepted) {
      ++est.accepted;
      sum_accepted += o.rho_eff;
    }
  }
  est.probability = static_cast<double>(est.accepted) / static_cast<double>(trials);
  est.standard_error = binomial_standard_error(est.probability, trials);
  est.rho_eff_all = sum_all / static_cast<double>(trials);
  est.rho_eff_accepted = est.accepted > 0 ? sum_accepted / static_cast<double>(est.accepted)
                                          : std::numeric_limits<double>::quiet_NaN();
  return est;
}

}  // namespace pla
