// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Signal flow of four-step challenge-response authentication over OFDM:
// Alice's challenge, propagation, Bob's key-mapped response, Alice's check,
// and the phase sequence an eavesdropper extracts from both transmissions.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pla/channel.hpp"
#include "pla/core.hpp"
#include "pla/rng.hpp"

namespace pla {

/// Per-subcarrier transmit phases beta_l.
struct Challenge {
  PhaseVector beta;
};

/// Per-subcarrier complex values stored as amplitude and wrapped phase.
struct FrequencySignal {
  std::vector<double> amplitudes;
  PhaseVector phases;

  std::size_t size() const noexcept { return phases.size(); }

  static FrequencySignal unit(PhaseVector phases);
};

/// z_l = wrap(phi_l - theta_l).
struct EveObservation {
  PhaseVector z;
};

Challenge make_challenge(std::size_t subcarriers, Rng& rng);

/// exp(j beta_l) on every subcarrier.
FrequencySignal challenge_signal(const Challenge& challenge);

/// Noise-free propagation: amplitudes multiply, phases add.
FrequencySignal propagate(const FrequencySignal& signal, const ChannelSnapshot& channel);

/// Negates the received phases and adds the key-mapped phases.
FrequencySignal bob_response(const FrequencySignal& received, const SecretKey& key,
                             const KeyPhaseMapping& mapping);

/// True iff every received phase is within `tolerance` of wrap(phi_l - beta_l).
/// A tolerance >= pi accepts anything and triggers a warning.
bool alice_verify(const FrequencySignal& received, const Challenge& challenge,
                  const SecretKey& key, const KeyPhaseMapping& mapping, double tolerance);

/// Recovers beta from the challenge as heard by Eve, then strips beta and
/// Bob-to-Eve phase from the response. Eve's channels are ground truth.
EveObservation eve_observe(const FrequencySignal& challenge_at_eve,
                           const FrequencySignal& response_at_eve,
                           const ChannelSnapshot& h_prime,
                           const ChannelSnapshot& h_double_prime);

struct ProtocolOptions {
  double tolerance = 1e-9;
  /// Von Mises concentration of additive receiver phase noise; 0 disables.
  double phase_noise_kappa = 0.0;
};

struct Transcript {
  std::uint64_t round_id = 0;
  std::uint64_t seed = 0;
  ChannelSnapshot h;
  ChannelSnapshot h_prime;
  ChannelSnapshot h_double_prime;
  Challenge challenge;
  PhaseVector phi;
  FrequencySignal received_by_bob;
  FrequencySignal response;
  FrequencySignal received_by_alice;
  bool verified = false;
};

struct RoundResult {
  Transcript transcript;
  EveObservation observation;
};

/// One full round with fresh h, h', h'' and challenge drawn from the
/// (seed, stream, round_id) substreams of `channels`.
RoundResult run_authentication_round(const ChannelSource& channels, const SecretKey& key,
                                     const KeyPhaseMapping& mapping,
                                     const ProtocolOptions& options, std::uint64_t round_id);

/// One JSON object per line: round id, seed, and per-subcarrier theta, beta,
/// phi, z plus the verification outcome.
void write_transcript_jsonl(std::ostream& out, const RoundResult& round);

}  // namespace pla
