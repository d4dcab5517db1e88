// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pla/analytics.hpp"
#include "pla/channel.hpp"
#include "pla/diagnostics.hpp"
#include "pla/error.hpp"
#include "pla/protocol.hpp"

using namespace pla;

namespace {

SecretKey random_bits(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.bit();
  return SecretKey(bits);
}

ChannelSnapshot random_channel(Rng& rng, std::size_t L) {
  std::vector<double> a(L);
  PhaseVector p(L);
  for (std::size_t l = 0; l < L; ++l) {
    a[l] = 0.1 + rng.uniform01();
    p[l] = rng.uniform_phase();
  }
  return ChannelSnapshot(a, p);
}

ChannelSource source(ChannelModel model, double rho, std::size_t L, std::uint64_t seed) {
  ChannelModelConfig c;
  c.model = model;
  c.rho = rho;
  c.num_subcarriers = L;
  c.seed = seed;
  return ChannelSource(c);
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("challenge is reproducible, wrapped and uniform") {
  Rng a(5), b(5);
  CHECK(make_challenge(8, a).beta == make_challenge(8, b).beta);
  Rng small(1);
  const auto two = make_challenge(2, small);
  CHECK(two.beta.size() == 2);
  for (double x : two.beta) CHECK(is_wrapped(x));
  CHECK_THROWS_AS(make_challenge(1, small), Error);

  Rng rng(8);
  std::vector<std::complex<double>> mean(4);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto c = make_challenge(4, rng);
    for (int l = 0; l < 4; ++l) mean[l] += std::polar(1.0, c.beta[l]);
  }
  for (auto m : mean) CHECK(std::abs(m) / n < 0.02);
}

TEST_CASE("propagation") {
  Rng rng(2);
  const auto h = random_channel(rng, 6);
  const auto unit = propagate(FrequencySignal::unit(PhaseVector(6, 0.0)), h);
  CHECK(unit.amplitudes == h.amplitudes());
  for (int l = 0; l < 6; ++l) CHECK(unit.phases[l] == doctest::Approx(h.phases()[l]));

  const auto c = make_challenge(6, rng);
  const auto once = propagate(challenge_signal(c), h);
  const auto twice = propagate(once, h);
  for (int l = 0; l < 6; ++l) {
    CHECK(angular_distance(once.phases[l], wrap_phase(h.phases()[l] + c.beta[l])) < 1e-12);
    CHECK(angular_distance(twice.phases[l], wrap_phase(2 * h.phases()[l] + c.beta[l])) < 1e-12);
    CHECK(twice.amplitudes[l] == doctest::Approx(h.amplitudes()[l] * h.amplitudes()[l]));
  }
  CHECK_THROWS_AS(propagate(FrequencySignal::unit(PhaseVector(5, 0.0)), h), Error);
}

TEST_CASE("bob response examples") {
  const KeyPhaseMapping m1(1);
  const auto zero = FrequencySignal::unit(PhaseVector(4, 0.0));
  for (double p : bob_response(zero, SecretKey({0, 0, 0, 0}), m1).phases) CHECK(p == 0.0);
  const auto r = bob_response(zero, SecretKey({1, 1, 0, 1}), m1);
  CHECK(r.phases == PhaseVector{kPi, kPi, 0.0, kPi});
  CHECK_THROWS_AS(bob_response(zero, SecretKey({1, 1, 0}), m1), Error);
}

TEST_CASE("legitimate rounds verify and one-bit changes fail") {
  Rng rng(13);
  for (unsigned m : {1u, 2u, 3u}) {
    const KeyPhaseMapping mapping(m);
    for (int t = 0; t < 2000; ++t) {
      const std::size_t L = 2 + t % 30;
      const auto h = random_channel(rng, L);
      const SecretKey k = random_bits(rng, L * m);
      const auto c = make_challenge(L, rng);
      const auto at_bob = propagate(challenge_signal(c), h);
      const auto at_alice = propagate(bob_response(at_bob, k, mapping), h);
      CHECK(alice_verify(at_alice, c, k, mapping, 1e-9));
      for (std::size_t l = 0; l < L; ++l) {
        CHECK(at_alice.amplitudes[l] == doctest::Approx(h.amplitudes()[l] * h.amplitudes()[l]));
      }

      std::vector<std::uint8_t> bits(k.bits().begin(), k.bits().end());
      bits[t % bits.size()] ^= 1;
      const SecretKey wrong(bits);
      CHECK_FALSE(alice_verify(propagate(bob_response(at_bob, wrong, mapping), h), c, k, mapping, 1e-9));
    }
  }
}

TEST_CASE("tolerance of pi accepts anything and warns") {
  std::vector<std::string> seen;
  auto previous = set_warning_handler([&](std::string_view w) { seen.emplace_back(w); });
  const KeyPhaseMapping m1(1);
  const Challenge c{PhaseVector{0.0, 0.0}};
  const auto junk = FrequencySignal::unit(PhaseVector{2.0, -2.0});
  CHECK(alice_verify(junk, c, SecretKey({0, 1}), m1, kPi));
  CHECK(seen.size() == 1);
  set_warning_handler(previous);
  CHECK_THROWS_AS(alice_verify(junk, c, SecretKey({0, 1}), m1, 0.0), Error);
}

TEST_CASE("eve observation equals phi minus theta") {
  for (auto model : {ChannelModel::bernoulli_differential, ChannelModel::ar1_complex_gaussian}) {
    const auto src = source(model, 0.5, 24, 77);
    for (unsigned m : {1u, 2u}) {
      const KeyPhaseMapping mapping(m);
      for (std::uint64_t i = 0; i < 500; ++i) {
        const SecretKey k = random_key(24 * m, 77, i);
        const RoundResult r = run_authentication_round(src, k, mapping, {}, i);
        CHECK(r.transcript.verified);
        for (std::size_t l = 0; l < 24; ++l) {
          const double truth = wrap_phase(r.transcript.phi[l] - r.transcript.h.phases()[l]);
          CHECK(angular_distance(r.observation.z[l], truth) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("flat channel: eve's differentials equal the key's") {
  const auto src = source(ChannelModel::flat_fading, 1.0, 16, 4);
  const KeyPhaseMapping m1(1);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const SecretKey k = random_key(16, 4, i);
    const RoundResult r = run_authentication_round(src, k, m1, {}, i);
    const auto dz = differential_sequence(r.observation.z);
    const auto dphi = differential_sequence(r.transcript.phi);
    for (std::size_t l = 0; l < dz.size(); ++l) CHECK(angular_distance(dz[l], dphi[l]) < 1e-9);
  }
}

TEST_CASE("all-zero key over a zero-phase channel gives z = 0") {
  const ChannelSnapshot zero(std::vector<double>(4, 1.0), PhaseVector(4, 0.0));
  Rng rng(3);
  const auto c = make_challenge(4, rng);
  const auto at_bob = propagate(challenge_signal(c), zero);
  const auto response = bob_response(at_bob, SecretKey({0, 0, 0, 0}), KeyPhaseMapping(1));
  const auto obs = eve_observe(propagate(challenge_signal(c), zero), propagate(response, zero), zero, zero);
  for (double z : obs.z) CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("rounds are reproducible") {
  const auto src = source(ChannelModel::ar1_complex_gaussian, 0.3, 8, 1234);
  for (std::uint64_t id : {0ull, 1ull, 2ull}) {
    const SecretKey k = random_key(8, 1234, id);
    const auto a = run_authentication_round(src, k, KeyPhaseMapping(1), {}, id);
    const auto b = run_authentication_round(src, k, KeyPhaseMapping(1), {}, id);
    CHECK(a.observation.z == b.observation.z);
    CHECK(a.transcript.challenge.beta == b.transcript.challenge.beta);
    CHECK(a.transcript.round_id == id);
  }
}

TEST_CASE("phase noise breaks exact verification") {
  const auto src = source(ChannelModel::ar1_complex_gaussian, 0.3, 16, 9);
  ProtocolOptions noisy;
  noisy.phase_noise_kappa = 50.0;
  int verified = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    verified += run_authentication_round(src, random_key(16, 9, i), KeyPhaseMapping(1), noisy, i)
                    .transcript.verified;
  }
  CHECK(verified == 0);
  noisy.tolerance = 1.5;
  verified = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    verified += run_authentication_round(src, random_key(16, 9, i), KeyPhaseMapping(1), noisy, i)
                    .transcript.verified;
  }
  CHECK(verified == 50);
}

TEST_CASE("transcript jsonl record") {
  const auto src = source(ChannelModel::bernoulli_differential, 0.5, 4, 2);
  const auto r = run_authentication_round(src, random_key(4, 2, 0), KeyPhaseMapping(1), {}, 0);
  std::ostringstream out;
  write_transcript_jsonl(out, r);
  const std::string line = out.str();
  CHECK(line.back() == '\n');
  const auto j = nlohmann::json::parse(line);
  CHECK(j["round_id"] == 0);
  CHECK(j["seed"] == 2);
  CHECK(j["z"].size() == 4);
  CHECK(j["verified"] == true);
}

}  // TEST_SUITE
