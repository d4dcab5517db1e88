// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Quantize channel responses to bits and decide whether they look random.
// Bob runs the test on his channel estimate before answering a challenge; a
// rejected channel means falling back to conventional authentication.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pla/channel.hpp"
#include "pla/core.hpp"

namespace pla {

struct RandomnessTestConfig {
  double alpha = 0.01;
  std::size_t min_sequence_length = 100;
  std::size_t concat_snapshots = 1;

  void validate() const;
};

struct TestResult {
  double p_value = 0.0;
  bool accepted = false;  // p_value > alpha
  std::size_t sequence_length = 0;
  std::size_t ones_count = 0;
  bool below_min_length = false;
};

/// Pluggable hypothesis test over a bit sequence; H0 is "the bits are random".
class RandomnessTest {
 public:
  virtual ~RandomnessTest() = default;
  virtual std::string_view name() const noexcept = 0;
  virtual TestResult run(std::span<const std::uint8_t> bits, const RandomnessTestConfig& cfg) const = 0;
};

/// Frequency (monobit) test: p = erfc(|sum(2b - 1)| / sqrt(2n)).
class FrequencyTest final : public RandomnessTest {
 public:
  std::string_view name() const noexcept override { return "frequency"; }
  TestResult run(std::span<const std::uint8_t> bits, const RandomnessTestConfig& cfg) const override;
};

TestResult frequency_test(std::span<const std::uint8_t> bits, const RandomnessTestConfig& cfg);

/// Absolute channel phases quantized through the key mapping (for m = 1:
/// 0 on (-pi/2, pi/2], 1 elsewhere).
std::vector<std::uint8_t> channel_to_bits(const ChannelSnapshot& h,
                                          const KeyPhaseMapping& mapping = KeyPhaseMapping{1});

/// Concatenated bits of several snapshots.
std::vector<std::uint8_t> channel_to_bits(std::span<const ChannelSnapshot> snapshots,
                                          const KeyPhaseMapping& mapping = KeyPhaseMapping{1});

struct AcceptanceEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;
  /// Mean per-snapshot 1 - 2 * (differential flip rate), over accepted
  /// snapshots and over all snapshots. NaN when nothing was accepted.
  double rho_eff_accepted = 0.0;
  double rho_eff_all = 0.0;
};

/// Each trial draws `concat_snapshots` snapshots (test stream), quantizes and
/// tests them.
AcceptanceEstimate p_accept_estimate(const ChannelSource& channels, const RandomnessTestConfig& cfg,
                                     std::uint64_t trials, unsigned threads = 1,
                                     const RandomnessTest& test = FrequencyTest{});

}  // namespace pla
