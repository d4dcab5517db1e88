// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include "pla/analytics.hpp"
#include "pla/attack.hpp"
#include "pla/channel.hpp"
#include "pla/error.hpp"

using namespace pla;

namespace {

// Independent model of the documented enumeration order: build every
// candidate with its sort key and sort.
struct OracleCandidate {
  std::vector<unsigned> sort_key;
  SecretKey key;
};

std::vector<SecretKey> oracle_order(const std::vector<std::uint8_t>& reference, unsigned m) {
  const KeyPhaseMapping mapping(m);
  const unsigned M = 1u << m;
  const std::size_t K = reference.size();
  std::vector<OracleCandidate> all;
  // Every differential vector d in [0, M)^K.
  std::vector<unsigned> d(K, 0);
  for (;;) {
    std::vector<unsigned> positions, ranks;
    for (std::size_t i = 0; i < K; ++i) {
      if (d[i] == reference[i]) continue;
      positions.push_back(static_cast<unsigned>(i));
      std::vector<unsigned> alts;
      for (unsigned v = 0; v < M; ++v) {
        if (v != reference[i]) alts.push_back(v);
      }
      std::stable_sort(alts.begin(), alts.end(), [&](unsigned a, unsigned b) {
        return mapping.phase_of(a) < mapping.phase_of(b);
      });
      ranks.push_back(static_cast<unsigned>(std::find(alts.begin(), alts.end(), d[i]) - alts.begin()));
    }
    for (unsigned first = 0; first < M; ++first) {
      std::vector<std::uint8_t> values(K + 1);
      values[0] = static_cast<std::uint8_t>(first);
      for (std::size_t i = 0; i < K; ++i) values[i + 1] = static_cast<std::uint8_t>((values[i] + d[i]) % M);
      std::vector<unsigned> sk{static_cast<unsigned>(positions.size())};
      sk.insert(sk.end(), positions.begin(), positions.end());
      sk.insert(sk.end(), ranks.begin(), ranks.end());
      sk.push_back(first);
      all.push_back({sk, key_from_subkeys(values, mapping)});
    }
    std::size_t i = 0;
    while (i < K && ++d[i] == M) d[i++] = 0;
    if (i == K) break;
  }
  std::sort(all.begin(), all.end(),
            [](const OracleCandidate& a, const OracleCandidate& b) { return a.sort_key < b.sort_key; });
  std::vector<SecretKey> out;
  for (auto& c : all) out.push_back(c.key);
  return out;
}

template <typename Enumerator>
std::vector<SecretKey> drain(Enumerator e) {
  std::vector<SecretKey> out;
  while (auto k = e.next()) out.push_back(*k);
  return out;
}

EveObservation random_observation(Rng& rng, std::size_t L) {
  EveObservation obs;
  obs.z.resize(L);
  for (auto& z : obs.z) z = rng.uniform_phase();
  return obs;
}

SecretKey random_bits(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.bit();
  return SecretKey(bits);
}

// Observation whose differential is exactly the given grid vector.
EveObservation observation_from_grid(const std::vector<unsigned>& d, const KeyPhaseMapping& mapping,
                                     double offset) {
  EveObservation obs;
  double acc = offset;
  obs.z.push_back(wrap_phase(acc));
  for (unsigned v : d) {
    acc += mapping.phase_of(v);
    obs.z.push_back(wrap_phase(acc));
  }
  return obs;
}

}  // namespace

TEST_SUITE("attack") {

TEST_CASE("budget must be positive") { CHECK_THROWS_AS(AttackBudget(0), Error); }

TEST_CASE("reference extraction") {
  const EveObservation fig{{0.0, kPi / 4, kPi, kPi}};
  CHECK(derive_reference(fig) == DifferentialBitSeq{0, 1, 0});
  CHECK(derive_reference(EveObservation{{0.7, 0.7, 0.7}}) == DifferentialBitSeq{0, 0});
  const PhaseVector phi = map_key_to_phases(SecretKey({1, 0, 0, 1, 1}), KeyPhaseMapping(1));
  CHECK(derive_reference(EveObservation{phi}) == quantize_binary(differential_sequence(phi)));
}

TEST_CASE("key reconstruction examples") {
  const std::vector<std::uint8_t> b{0, 1, 0};
  CHECK(reconstruct_keys(b, 1) == SecretKey({1, 1, 0, 0}));
  CHECK(reconstruct_keys(b, 0) == SecretKey({0, 0, 1, 1}));
  CHECK(reconstruct_keys(std::vector<std::uint8_t>{0, 1, 1}, 1) == SecretKey({1, 1, 0, 1}));
  CHECK(reconstruct_keys(std::vector<std::uint8_t>{0, 0, 0}, 0) == SecretKey({0, 0, 0, 0}));
}

TEST_CASE("binary enumeration order") {
  const auto keys = drain(MdlgEnumerator({0, 1, 0}, AttackBudget(100)));
  REQUIRE(keys.size() == 16);
  CHECK(keys[7] == SecretKey({1, 1, 0, 1}));
  CHECK(keys == oracle_order({0, 1, 0}, 1));
  std::set<std::vector<std::uint8_t>> distinct;
  for (const auto& k : keys) distinct.emplace(k.bits().begin(), k.bits().end());
  CHECK(distinct.size() == 16);

  const auto one = drain(MdlgEnumerator({0, 1, 0}, AttackBudget(1)));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == reconstruct_keys(std::vector<std::uint8_t>{0, 1, 0}, 0));
}

TEST_CASE("enumerators match the order model") {
  Rng rng(31);
  for (unsigned m = 1; m <= 3; ++m) {
    const KeyPhaseMapping mapping(m);
    const std::size_t K = m == 1 ? 5 : (m == 2 ? 3 : 2);
    for (int t = 0; t < 6; ++t) {
      std::vector<std::uint8_t> ref(K);
      for (auto& r : ref) r = static_cast<std::uint8_t>(rng.next_u64() % (1u << m));
      const auto expected = oracle_order(ref, m);
      CHECK(drain(MMdlgEnumerator(ref, mapping, AttackBudget(1u << 20))) == expected);
      if (m == 1) CHECK(drain(MdlgEnumerator(ref, AttackBudget(1u << 20))) == expected);
      for (std::size_t i = 0; i < expected.size(); i += 1 + expected.size() / 9) {
        const auto pos = locate_candidate(ref, expected[i], mapping);
        CHECK(static_cast<std::uint64_t>(pos.index) == i);
        CHECK(pos.level == level_of_index(static_cast<unsigned>(K), m, pos.index));
      }
    }
  }
}

TEST_CASE("alternatives ascend by wrapped phase") {
  // Grid for m = 2: 0, pi/2, pi, -pi/2 -> ascending: -pi/2, 0, pi/2, pi.
  CHECK(alternative_values(0, KeyPhaseMapping(2)) == std::vector<std::uint8_t>{3, 1, 2});
  CHECK(alternative_values(3, KeyPhaseMapping(2)) == std::vector<std::uint8_t>{0, 1, 2});
  CHECK(alternative_values(1, KeyPhaseMapping(1)) == std::vector<std::uint8_t>{0});
}

TEST_CASE("worked replay: eight candidates, budget seven fails") {
  const EveObservation obs{{0.0, kPi / 4, kPi, kPi}};
  const SecretKey truth({1, 1, 0, 1});
  const AttackReport r = run_mdlg(obs, equality_oracle(truth), AttackBudget(100));
  CHECK(r.success);
  CHECK(r.candidates_tried == 8);
  REQUIRE(r.recovered_key);
  CHECK(*r.recovered_key == truth);
  CHECK(r.n_reached == 1);
  CHECK(predict_attack_outcome(obs, truth, KeyPhaseMapping(1), AttackBudget(100)) == r);

  const AttackReport short_budget = run_mdlg(obs, equality_oracle(truth), AttackBudget(7));
  CHECK_FALSE(short_budget.success);
  CHECK(short_budget.candidates_tried == 7);
  CHECK_FALSE(short_budget.recovered_key);
  CHECK(predict_attack_outcome(obs, truth, KeyPhaseMapping(1), AttackBudget(7)) == short_budget);
}

TEST_CASE("oracle calls equal candidates tried") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto obs = random_observation(rng, 8);
    const SecretKey truth = random_bits(rng, 8);
    std::uint64_t calls = 0;
    const KeyOracle counting = [&](const SecretKey& k) {
      ++calls;
      return k == truth;
    };
    const auto r = run_mdlg(obs, counting, AttackBudget(1 + t));
    CHECK(calls == r.candidates_tried);
    CHECK(r.candidates_tried <= static_cast<std::uint64_t>(1 + t));
    if (r.success) CHECK(*r.recovered_key == truth);
  }
}

TEST_CASE("m = 1 m-ary attack is identical to the binary attack") {
  Rng rng(41);
  const KeyPhaseMapping m1(1);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t L = 2 + t % 10;
    const auto obs = random_observation(rng, L);
    const SecretKey truth = random_bits(rng, L);
    const AttackBudget budget(1 + rng.next_u64() % 600);
    const auto a = run_mdlg(obs, equality_oracle(truth), budget);
    CHECK(a == run_m_mdlg(obs, m1, equality_oracle(truth), budget));
    CHECK(a == predict_attack_outcome(obs, truth, m1, budget));
  }
}

TEST_CASE("ranked outcome equals walked outcome for m-ary mappings") {
  Rng rng(43);
  for (unsigned m = 2; m <= 4; ++m) {
    const KeyPhaseMapping mapping(m);
    for (int t = 0; t < 200; ++t) {
      const std::size_t L = 2 + t % 4;
      const auto obs = random_observation(rng, L);
      const SecretKey truth = random_bits(rng, L * m);
      const AttackBudget budget(1 + rng.next_u64() % 3000);
      CHECK(run_m_mdlg(obs, mapping, equality_oracle(truth), budget) ==
            predict_attack_outcome(obs, truth, mapping, budget));
    }
  }
}

TEST_CASE("flat channel succeeds within one level-zero block") {
  ChannelModelConfig cfg;
  cfg.model = ChannelModel::flat_fading;
  cfg.num_subcarriers = 12;
  cfg.seed = 5;
  const ChannelSource src(cfg);
  for (unsigned m : {1u, 2u, 3u}) {
    const KeyPhaseMapping mapping(m);
    for (std::uint64_t i = 0; i < 100; ++i) {
      const SecretKey k = random_key(12 * m, 5, i);
      const auto round = run_authentication_round(src, k, mapping, {}, i);
      const auto r = run_m_mdlg(round.observation, mapping, equality_oracle(k), AttackBudget(1u << m));
      CHECK(r.success);
      CHECK(r.candidates_tried <= (1u << m));
      CHECK(r.n_reached == 0);
    }
  }
}

TEST_CASE("exhaustive budgets always succeed") {
  Rng rng(17);
  const KeyPhaseMapping m2(2);
  for (int t = 0; t < 50; ++t) {
    const auto obs = random_observation(rng, 4);
    const SecretKey truth = random_bits(rng, 8);
    const auto r = run_m_mdlg(obs, m2, equality_oracle(truth), AttackBudget(256));
    CHECK(r.success);
  }
  for (int t = 0; t < 50; ++t) {
    const auto obs = random_observation(rng, 10);
    const SecretKey truth = random_bits(rng, 10);
    CHECK(run_mdlg(obs, equality_oracle(truth), AttackBudget(1024)).success);
  }
}

TEST_CASE("candidates do not depend on the absolute phase of z") {
  Rng rng(19);
  for (unsigned m : {1u, 2u, 3u}) {
    const KeyPhaseMapping mapping(m);
    for (int t = 0; t < 50; ++t) {
      std::vector<unsigned> d(5);
      for (auto& v : d) v = static_cast<unsigned>(rng.next_u64() % (1u << m));
      // Keep differentials away from cell edges so the shift cannot move them.
      const auto a = observation_from_grid(d, mapping, 0.0);
      auto b = a;
      const double shift = rng.uniform_phase();
      for (auto& z : b.z) z = wrap_phase(z + shift);
      CHECK(derive_m_ary_reference(a, mapping) == derive_m_ary_reference(b, mapping));
      if (m == 1) CHECK(derive_reference(a) == derive_reference(b));
      CHECK(drain(MMdlgEnumerator(derive_m_ary_reference(a, mapping), mapping, AttackBudget(300))) ==
            drain(MMdlgEnumerator(derive_m_ary_reference(b, mapping), mapping, AttackBudget(300))));
    }
  }
}

TEST_CASE("per-candidate hit rate falls with level") {
  ChannelModelConfig cfg;
  cfg.model = ChannelModel::bernoulli_differential;
  cfg.rho = 0.5;
  cfg.num_subcarriers = 12;
  cfg.seed = 23;
  const ChannelSource src(cfg);
  const KeyPhaseMapping m1(1);
  std::vector<double> hits(12, 0.0);
  const std::uint64_t trials = 20000;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const SecretKey k = random_key(12, 23, i);
    const auto round = run_authentication_round(src, k, m1, {}, i);
    const auto r = predict_attack_outcome(round.observation, k, m1, AttackBudget(1u << 12));
    REQUIRE(r.success);
    hits[r.n_reached] += 1.0;
  }
  std::vector<double> per_candidate;
  for (unsigned n = 0; n <= 6; ++n) {
    per_candidate.push_back(hits[n] / static_cast<double>(level_size(11, 1, n)));
  }
  for (std::size_t n = 1; n < per_candidate.size(); ++n) CHECK(per_candidate[n] <= per_candidate[n - 1]);
}

TEST_CASE("success is monotone in budget and rho") {
  ChannelModelConfig cfg;
  cfg.model = ChannelModel::bernoulli_differential;
  cfg.num_subcarriers = 16;
  cfg.seed = 29;
  MonteCarloOptions opts;
  opts.engine = AttackEngine::rank;
  double previous = -1.0;
  for (double rho : {0.0, 0.3, 0.6, 0.9}) {
    cfg.rho = rho;
    const double rate = monte_carlo_success(ChannelSource(cfg), KeyPhaseMapping(1), AttackBudget(1000), 4000, opts).rate;
    CHECK(rate >= previous);
    previous = rate;
  }
  cfg.rho = 0.6;
  previous = -1.0;
  for (std::uint64_t N : {10u, 100u, 1000u, 10000u}) {
    const double rate = monte_carlo_success(ChannelSource(cfg), KeyPhaseMapping(1), AttackBudget(N), 4000, opts).rate;
    CHECK(rate >= previous);
    previous = rate;
  }
}

}  // TEST_SUITE
