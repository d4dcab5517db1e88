// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Key-recovery attacks against challenge-response PLA.
//
// Eve quantizes the adjacent differences of her observation z into a
// reference for the key's differential sequence, then walks candidates in
// decreasing likelihood: first the reference itself, then every reference
// with one position changed, then two, and so on. Each differential
// candidate expands to one key per possible first sub-key.
//
// Enumeration order, fixed for reproducibility:
//   for level n = 0, 1, ...
//     for each n-subset of positions, lexicographic
//       for each assignment of alternative grid values to the changed
//       positions (ascending wrapped phase, last position fastest)
//         for each first sub-key value, ascending
// For the binary mapping this is: flip the subset, then first bit 0, then 1.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pla/combinatorics.hpp"
#include "pla/core.hpp"
#include "pla/protocol.hpp"

namespace pla {

/// Maximum number of key candidates Eve may submit to the oracle.
class AttackBudget {
 public:
  explicit AttackBudget(std::uint64_t max_candidates);
  std::uint64_t max_candidates() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

struct AttackReport {
  bool success = false;
  std::uint64_t candidates_tried = 0;
  std::optional<SecretKey> recovered_key;
  /// Level of the last candidate tried; -1 if none was.
  int n_reached = -1;

  friend bool operator==(const AttackReport&, const AttackReport&) = default;
};

/// Answers "is this the shared key?". Must be true for exactly one key.
using KeyOracle = std::function<bool(const SecretKey&)>;

KeyOracle equality_oracle(SecretKey truth);

/// quantize_binary(differential_sequence(z)).
DifferentialBitSeq derive_reference(const EveObservation& observation);

/// s[0] = first_bit; s[l+1] = s[l] xor b[l].
SecretKey reconstruct_keys(std::span<const std::uint8_t> b_phi, std::uint8_t first_bit);

/// Lazy binary-mapping candidate stream, truncated at the budget.
class MdlgEnumerator {
 public:
  MdlgEnumerator(DifferentialBitSeq reference, AttackBudget budget);

  std::optional<SecretKey> next();

  /// Level of the most recently yielded candidate.
  int level() const noexcept { return last_level_; }
  std::uint64_t yielded() const noexcept { return yielded_; }

 private:
  bool advance_subset();

  DifferentialBitSeq reference_;
  std::uint64_t budget_;
  std::vector<unsigned> subset_;
  unsigned level_ = 0;
  std::uint8_t first_bit_ = 0;
  bool exhausted_ = false;
  std::uint64_t yielded_ = 0;
  int last_level_ = -1;
};

AttackReport run_mdlg(const EveObservation& observation, const KeyOracle& oracle,
                      AttackBudget budget);

/// Grid indices of snap_to_grid(differential_sequence(z)).
DifferentialBitSeq derive_m_ary_reference(const EveObservation& observation,
                                          const KeyPhaseMapping& mapping);

/// Cumulative sum of differential grid indices from the first sub-key value,
/// then inverse-mapped.
SecretKey reconstruct_m_ary_key(std::span<const std::uint8_t> delta_indices,
                                unsigned first_value, const KeyPhaseMapping& mapping);

/// Alternatives to `reference_value`, ascending by wrapped phase.
std::vector<std::uint8_t> alternative_values(unsigned reference_value,
                                             const KeyPhaseMapping& mapping);

/// Lazy 2^m-ary candidate stream, truncated at the budget.
class MMdlgEnumerator {
 public:
  MMdlgEnumerator(DifferentialBitSeq reference, KeyPhaseMapping mapping, AttackBudget budget);

  std::optional<SecretKey> next();

  int level() const noexcept { return last_level_; }
  std::uint64_t yielded() const noexcept { return yielded_; }

 private:
  void advance();

  DifferentialBitSeq reference_;
  KeyPhaseMapping mapping_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint8_t>> alternatives_;
  std::vector<unsigned> subset_;
  std::vector<unsigned> digits_;
  unsigned level_ = 0;
  unsigned first_value_ = 0;
  bool exhausted_ = false;
  std::uint64_t yielded_ = 0;
  int last_level_ = -1;
};

AttackReport run_m_mdlg(const EveObservation& observation, const KeyPhaseMapping& mapping,
                        const KeyOracle& oracle, AttackBudget budget);

struct CandidatePosition {
  Count index = 0;  // zero-based position in the enumeration order
  int level = 0;
};

/// Where `key` appears in the enumeration seeded by `reference`.
CandidatePosition locate_candidate(std::span<const std::uint8_t> reference, const SecretKey& key,
                                   const KeyPhaseMapping& mapping);

/// Level containing the candidate at zero-based `index`.
int level_of_index(unsigned positions, unsigned m, Count index);

/// The report run_m_mdlg would produce against equality_oracle(truth),
/// computed by ranking the true key instead of walking the candidates.
AttackReport predict_attack_outcome(const EveObservation& observation, const SecretKey& truth,
                                    const KeyPhaseMapping& mapping, AttackBudget budget);

}  // namespace pla
