// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/attack.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pla/error.hpp"

namespace pla {
namespace {

// Lexicographic successor of an ascending subset of [0, positions).
bool next_subset(std::vector<unsigned>& subset, unsigned positions) {
  const auto n = static_cast<unsigned>(subset.size());
  for (unsigned i = n; i-- > 0;) {
    if (subset[i] < positions - n + i) {
      ++subset[i];
      for (unsigned j = i + 1; j < n; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<unsigned> first_subset(unsigned n) {
  std::vector<unsigned> s(n);
  std::iota(s.begin(), s.end(), 0u);
  return s;
}

template <typename Enumerator>
AttackReport drive(Enumerator& enumerator, const KeyOracle& oracle) {
  AttackReport report;
  while (auto candidate = enumerator.next()) {
    report.candidates_tried = enumerator.yielded();
    report.n_reached = enumerator.level();
    if (oracle(*candidate)) {
      report.success = true;
      report.recovered_key = std::move(*candidate);
      break;
    }
  }
  return report;
}

}  // namespace

AttackBudget::AttackBudget(std::uint64_t max_candidates) : n_(max_candidates) {
  require(n_ >= 1, ErrorKind::invalid_argument, "attack budget must be at least 1");
}

KeyOracle equality_oracle(SecretKey truth) {
  return [truth = std::move(truth)](const SecretKey& candidate) { return candidate == truth; };
}

DifferentialBitSeq derive_reference(const EveObservation& observation) {
  return quantize_binary(differential_sequence(observation.z));
}

SecretKey reconstruct_keys(std::span<const std::uint8_t> b_phi, std::uint8_t first_bit) {
  require(first_bit <= 1, ErrorKind::invalid_argument, "first bit must be 0 or 1");
  std::vector<std::uint8_t> bits(b_phi.size() + 1);
  bits[0] = first_bit;
  for (std::size_t l = 0; l < b_phi.size(); ++l) bits[l + 1] = bits[l] ^ (b_phi[l] & 1u);
  return SecretKey(std::move(bits));
}

// ---------------------------------------------------------------------------
// Binary mapping

MdlgEnumerator::MdlgEnumerator(DifferentialBitSeq reference, AttackBudget budget)
    : reference_(std::move(reference)), budget_(budget.max_candidates()) {
  for (auto b : reference_) {
    require(b <= 1, ErrorKind::invalid_argument, "binary reference must hold bits");
  }
}

bool MdlgEnumerator::advance_subset() {
  if (next_subset(subset_, static_cast<unsigned>(reference_.size()))) return true;
  if (level_ >= reference_.size()) return false;
  ++level_;
  subset_ = first_subset(level_);
  return true;
}

std::optional<SecretKey> MdlgEnumerator::next() {
  if (exhausted_ || yielded_ >= budget_) return std::nullopt;
  DifferentialBitSeq candidate = reference_;
  for (unsigned pos : subset_) candidate[pos] ^= 1u;
  SecretKey key = reconstruct_keys(candidate, first_bit_);
  last_level_ = static_cast<int>(level_);
  ++yielded_;
  if (first_bit_ == 0) {
    first_bit_ = 1;
  } else {
    first_bit_ = 0;
    exhausted_ = !advance_subset();
  }
  return key;
}

AttackReport run_mdlg(const EveObservation& observation, const KeyOracle& oracle,
                      AttackBudget budget) {
  MdlgEnumerator enumerator(derive_reference(observation), budget);
  return drive(enumerator, oracle);
}

// ---------------------------------------------------------------------------
// 2^m-ary mapping

DifferentialBitSeq derive_m_ary_reference(const EveObservation& observation,
                                          const KeyPhaseMapping& mapping) {
  return snap_to_grid_indices(differential_sequence(observation.z), mapping);
}

SecretKey reconstruct_m_ary_key(std::span<const std::uint8_t> delta_indices,
                                unsigned first_value, const KeyPhaseMapping& mapping) {
  const unsigned M = mapping.alphabet_size();
  require(first_value < M, ErrorKind::invalid_argument, "first sub-key value outside the alphabet");
  std::vector<std::uint8_t> values(delta_indices.size() + 1);
  values[0] = static_cast<std::uint8_t>(first_value);
  for (std::size_t l = 0; l < delta_indices.size(); ++l) {
    values[l + 1] = static_cast<std::uint8_t>((values[l] + delta_indices[l]) % M);
  }
  return key_from_subkeys(values, mapping);
}

std::vector<std::uint8_t> alternative_values(unsigned reference_value,
                                             const KeyPhaseMapping& mapping) {
  std::vector<std::uint8_t> alts;
  for (unsigned k = 0; k < mapping.alphabet_size(); ++k) {
    if (k != reference_value) alts.push_back(static_cast<std::uint8_t>(k));
  }
  std::stable_sort(alts.begin(), alts.end(), [&](std::uint8_t a, std::uint8_t b) {
    return mapping.phase_of(a) < mapping.phase_of(b);
  });
  return alts;
}

MMdlgEnumerator::MMdlgEnumerator(DifferentialBitSeq reference, KeyPhaseMapping mapping,
                                 AttackBudget budget)
    : reference_(std::move(reference)), mapping_(mapping), budget_(budget.max_candidates()) {
  alternatives_.resize(mapping_.alphabet_size());
  for (unsigned k = 0; k < mapping_.alphabet_size(); ++k) {
    alternatives_[k] = alternative_values(k, mapping_);
  }
  for (auto v : reference_) {
    require(v < mapping_.alphabet_size(), ErrorKind::invalid_argument,
            "reference value outside the alphabet");
  }
}

void MMdlgEnumerator::advance() {
  if (++first_value_ < mapping_.alphabet_size()) return;
  first_value_ = 0;
  const unsigned radix = mapping_.alphabet_size() - 1;
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < radix) return;
    digits_[i] = 0;
  }
  if (next_subset(subset_, static_cast<unsigned>(reference_.size()))) return;
  if (level_ >= reference_.size()) {
    exhausted_ = true;
    return;
  }
  ++level_;
  subset_ = first_subset(level_);
  digits_.assign(level_, 0);
}

std::optional<SecretKey> MMdlgEnumerator::next() {
  if (exhausted_ || yielded_ >= budget_) return std::nullopt;
  DifferentialBitSeq candidate = reference_;
  for (std::size_t i = 0; i < subset_.size(); ++i) {
    const unsigned pos = subset_[i];
    candidate[pos] = alternatives_[reference_[pos]][digits_[i]];
  }
  SecretKey key = reconstruct_m_ary_key(candidate, first_value_, mapping_);
  last_level_ = static_cast<int>(level_);
  ++yielded_;
  advance();
  return key;
}

AttackReport run_m_mdlg(const EveObservation& observation, const KeyPhaseMapping& mapping,
                        const KeyOracle& oracle, AttackBudget budget) {
  MMdlgEnumerator enumerator(derive_m_ary_reference(observation, mapping), mapping, budget);
  return drive(enumerator, oracle);
}

// ---------------------------------------------------------------------------
// Ranking

CandidatePosition locate_candidate(std::span<const std::uint8_t> reference, const SecretKey& key,
                                   const KeyPhaseMapping& mapping) {
  const auto values = subkey_values(key, mapping);
  require(values.size() == reference.size() + 1, ErrorKind::length_mismatch,
          "key has " + std::to_string(values.size()) + " sub-keys but the reference expects " +
              std::to_string(reference.size() + 1));
  const unsigned M = mapping.alphabet_size();
  const auto K = static_cast<unsigned>(reference.size());

  std::vector<unsigned> changed;
  std::vector<unsigned> digits;
  for (unsigned l = 0; l < K; ++l) {
    const unsigned truth = (values[l + 1] + M - values[l]) % M;
    if (truth == reference[l]) continue;
    const auto alts = alternative_values(reference[l], mapping);
    const auto it = std::find(alts.begin(), alts.end(), truth);
    changed.push_back(l);
    digits.push_back(static_cast<unsigned>(it - alts.begin()));
  }
  const auto n = static_cast<unsigned>(changed.size());

  Count subset_rank = 0;
  int prev = -1;
  for (unsigned i = 0; i < n; ++i) {
    for (int j = prev + 1; j < static_cast<int>(changed[i]); ++j) {
      subset_rank = sat_add(subset_rank, binomial(K - 1 - static_cast<unsigned>(j), n - 1 - i));
    }
    prev = static_cast<int>(changed[i]);
  }
  Count odometer = 0;
  for (unsigned d : digits) odometer = sat_add(sat_mul(odometer, M - 1), d);

  const Count within = sat_add(sat_mul(subset_rank, sat_pow(M - 1, n)), odometer);
  CandidatePosition pos;
  pos.index = sat_add(level_offset(K, mapping.bits_per_subkey(), n),
                      sat_add(sat_mul(within, M), values[0]));
  pos.level = static_cast<int>(n);
  return pos;
}

int level_of_index(unsigned positions, unsigned m, Count index) {
  Count total = 0;
  for (unsigned n = 0; n <= positions; ++n) {
    total = sat_add(total, level_size(positions, m, n));
    if (index < total) return static_cast<int>(n);
  }
  return static_cast<int>(positions);
}

AttackReport predict_attack_outcome(const EveObservation& observation, const SecretKey& truth,
                                    const KeyPhaseMapping& mapping, AttackBudget budget) {
  const auto reference = derive_m_ary_reference(observation, mapping);
  const auto pos = locate_candidate(reference, truth, mapping);
  AttackReport report;
  if (pos.index < budget.max_candidates()) {
    report.success = true;
    report.candidates_tried = saturate_u64(pos.index + 1);
    report.recovered_key = truth;
    report.n_reached = pos.level;
  } else {
    report.candidates_tried = budget.max_candidates();
    report.n_reached = level_of_index(static_cast<unsigned>(reference.size()),
                                      mapping.bits_per_subkey(), budget.max_candidates() - 1);
  }
  return report;
}

}  // namespace pla
