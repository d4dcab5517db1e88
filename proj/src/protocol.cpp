// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/protocol.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "pla/diagnostics.hpp"
#include "pla/error.hpp"

namespace pla {
namespace {

void require_length(std::size_t a, std::size_t b, const char* what) {
  require(a == b, ErrorKind::length_mismatch,
          std::string(what) + ": length " + std::to_string(a) + " vs " + std::to_string(b));
}

void add_phase_noise(FrequencySignal& signal, double kappa, Rng& rng) {
  if (kappa <= 0.0) return;
  for (auto& p : signal.phases) p = wrap_phase(p + rng.von_mises(kappa));
}

}  // namespace

FrequencySignal FrequencySignal::unit(PhaseVector phases) {
  FrequencySignal s;
  s.amplitudes.assign(phases.size(), 1.0);
  s.phases = std::move(phases);
  return s;
}

Challenge make_challenge(std::size_t subcarriers, Rng& rng) {
  require(subcarriers >= 2, ErrorKind::invalid_argument, "challenge needs at least two subcarriers");
  Challenge c;
  c.beta.resize(subcarriers);
  for (auto& b : c.beta) b = rng.uniform_phase();
  return c;
}

FrequencySignal challenge_signal(const Challenge& challenge) {
  return FrequencySignal::unit(challenge.beta);
}

FrequencySignal propagate(const FrequencySignal& signal, const ChannelSnapshot& channel) {
  require_length(signal.size(), channel.size(), "propagate");
  require_length(signal.amplitudes.size(), signal.phases.size(), "propagate signal");
  FrequencySignal out;
  out.amplitudes.resize(signal.size());
  out.phases.resize(signal.size());
  for (std::size_t l = 0; l < signal.size(); ++l) {
    out.amplitudes[l] = signal.amplitudes[l] * channel.amplitudes()[l];
    out.phases[l] = wrap_phase(signal.phases[l] + channel.phases()[l]);
  }
  return out;
}

FrequencySignal bob_response(const FrequencySignal& received, const SecretKey& key,
                             const KeyPhaseMapping& mapping) {
  const PhaseVector phi = map_key_to_phases(key, mapping);
  require(phi.size() == received.size(), ErrorKind::length_mismatch,
          "key maps to " + std::to_string(phi.size()) + " sub-keys but the signal has " +
              std::to_string(received.size()) + " subcarriers");
  FrequencySignal out;
  out.amplitudes = received.amplitudes;
  out.phases.resize(received.size());
  for (std::size_t l = 0; l < received.size(); ++l) {
    out.phases[l] = wrap_phase(phi[l] - received.phases[l]);
  }
  return out;
}

bool alice_verify(const FrequencySignal& received, const Challenge& challenge,
                  const SecretKey& key, const KeyPhaseMapping& mapping, double tolerance) {
  require(tolerance > 0.0, ErrorKind::invalid_argument, "verification tolerance must be positive");
  if (tolerance >= kPi) warn("verification tolerance >= pi accepts every response");
  const PhaseVector phi = map_key_to_phases(key, mapping);
  require_length(received.size(), challenge.beta.size(), "alice_verify");
  require_length(received.size(), phi.size(), "alice_verify key");
  for (std::size_t l = 0; l < received.size(); ++l) {
    const double expected = wrap_phase(phi[l] - challenge.beta[l]);
    if (angular_distance(received.phases[l], expected) > tolerance) return false;
  }
  return true;
}

EveObservation eve_observe(const FrequencySignal& challenge_at_eve,
                           const FrequencySignal& response_at_eve,
                           const ChannelSnapshot& h_prime,
                           const ChannelSnapshot& h_double_prime) {
  const std::size_t L = challenge_at_eve.size();
  require_length(response_at_eve.size(), L, "eve_observe response");
  require_length(h_prime.size(), L, "eve_observe h'");
  require_length(h_double_prime.size(), L, "eve_observe h''");
  EveObservation obs;
  obs.z.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    const double beta = challenge_at_eve.phases[l] - h_prime.phases()[l];
    // Response phase at Eve: phi - theta - beta + theta''.
    obs.z[l] = wrap_phase(response_at_eve.phases[l] - h_double_prime.phases()[l] + beta);
  }
  return obs;
}

RoundResult run_authentication_round(const ChannelSource& channels, const SecretKey& key,
                                     const KeyPhaseMapping& mapping,
                                     const ProtocolOptions& options, std::uint64_t round_id) {
  const std::uint64_t seed = channels.config().seed;
  const std::size_t L = channels.subcarriers();
  require(key.size() == L * mapping.bits_per_subkey(), ErrorKind::length_mismatch,
          "key length must equal subcarriers * bits per sub-key");

  RoundResult r;
  auto& t = r.transcript;
  t.round_id = round_id;
  t.seed = seed;
  t.h = channels.draw(Stream::channel, round_id);
  t.h_prime = channels.draw(Stream::eve_channel, 2 * round_id);
  t.h_double_prime = channels.draw(Stream::eve_channel, 2 * round_id + 1);

  Rng protocol_rng(seed, Stream::protocol, round_id);
  Rng noise_rng(seed, Stream::noise, round_id);
  t.challenge = make_challenge(L, protocol_rng);
  t.phi = map_key_to_phases(key, mapping);

  const FrequencySignal sa = challenge_signal(t.challenge);
  t.received_by_bob = propagate(sa, t.h);
  add_phase_noise(t.received_by_bob, options.phase_noise_kappa, noise_rng);
  t.response = bob_response(t.received_by_bob, key, mapping);
  t.received_by_alice = propagate(t.response, t.h);
  add_phase_noise(t.received_by_alice, options.phase_noise_kappa, noise_rng);
  t.verified = alice_verify(t.received_by_alice, t.challenge, key, mapping, options.tolerance);

  FrequencySignal at_eve_from_alice = propagate(sa, t.h_prime);
  FrequencySignal at_eve_from_bob = propagate(t.response, t.h_double_prime);
  add_phase_noise(at_eve_from_alice, options.phase_noise_kappa, noise_rng);
  add_phase_noise(at_eve_from_bob, options.phase_noise_kappa, noise_rng);
  r.observation = eve_observe(at_eve_from_alice, at_eve_from_bob, t.h_prime, t.h_double_prime);
  return r;
}

void write_transcript_jsonl(std::ostream& out, const RoundResult& round) {
  const auto& t = round.transcript;
  nlohmann::ordered_json j;
  j["round_id"] = t.round_id;
  j["seed"] = t.seed;
  j["theta"] = t.h.phases();
  j["beta"] = t.challenge.beta;
  j["phi"] = t.phi;
  j["z"] = round.observation.z;
  j["verified"] = t.verified;
  out << j.dump() << '\n';
}

}  // namespace pla
