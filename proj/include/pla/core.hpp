// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Shared domain types for challenge-response physical-layer authentication:
// keys, the key-to-phase mapping, channel snapshots, and the phase arithmetic
// (wrapping, differentials, quantization) every other module builds on.
//
// Phase convention: every phase this library returns lies in (-pi, pi].

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace pla {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest supported bits-per-subkey. Grid indices are stored in uint8_t.
inline constexpr unsigned kMaxBitsPerSubkey = 8;

using PhaseVector = std::vector<double>;

/// Quantized differential sequence. Binary for m = 1; for m > 1 each element
/// is a grid index in [0, 2^m).
using DifferentialBitSeq = std::vector<std::uint8_t>;

/// Wraps an angle into (-pi, pi].
double wrap_phase(double radians) noexcept;

/// Smallest absolute angle between two phases, in [0, pi].
double angular_distance(double a, double b) noexcept;

bool is_wrapped(double radians) noexcept;

/// Shared S-bit secret. Bits are stored most-significant-sub-key first.
class SecretKey {
 public:
  SecretKey() = default;
  explicit SecretKey(std::vector<std::uint8_t> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// One-to-one map between m-bit sub-keys and the 2^m phases k * 2pi / 2^m.
/// Sub-key value v (natural binary, MSB first) maps to grid index k = v.
class KeyPhaseMapping {
 public:
  explicit KeyPhaseMapping(unsigned bits_per_subkey = 1);

  unsigned bits_per_subkey() const noexcept { return m_; }
  unsigned alphabet_size() const noexcept { return 1u << m_; }
  double grid_step() const noexcept { return kTwoPi / alphabet_size(); }

  /// Wrapped phase of grid index k (k taken modulo the alphabet size).
  double phase_of(unsigned grid_index) const noexcept;

  /// Nearest grid index for a phase. Cells are upper-closed, so a phase
  /// exactly halfway between two grid points goes to the lower one.
  unsigned nearest_index(double radians) const;

  /// Alphabet ordered by sub-key value.
  std::vector<double> phase_alphabet() const;

 private:
  unsigned m_;
};

/// Per-subcarrier response a_l * exp(j theta_l). Amplitudes are strictly
/// positive and phases wrapped.
class ChannelSnapshot {
 public:
  ChannelSnapshot() = default;
  ChannelSnapshot(std::vector<double> amplitudes, PhaseVector phases);

  std::size_t size() const noexcept { return phases_.size(); }
  const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }
  const PhaseVector& phases() const noexcept { return phases_; }

 private:
  std::vector<double> amplitudes_;
  PhaseVector phases_;
};

PhaseVector map_key_to_phases(const SecretKey& key, const KeyPhaseMapping& mapping);

SecretKey inverse_map(std::span<const double> phases, const KeyPhaseMapping& mapping);

/// Element l is wrap(x[l+1] - x[l]).
PhaseVector differential_sequence(std::span<const double> x);

/// 0 on (-pi/2, pi/2], 1 elsewhere.
DifferentialBitSeq quantize_binary(std::span<const double> delta);

PhaseVector snap_to_grid(std::span<const double> delta, const KeyPhaseMapping& mapping);

/// Same as snap_to_grid, returning grid indices in [0, 2^m).
DifferentialBitSeq snap_to_grid_indices(std::span<const double> delta,
                                        const KeyPhaseMapping& mapping);

/// Sub-key values (grid indices) of a key, one per subcarrier.
std::vector<std::uint8_t> subkey_values(const SecretKey& key, const KeyPhaseMapping& mapping);

/// Inverse of subkey_values.
SecretKey key_from_subkeys(std::span<const std::uint8_t> values, const KeyPhaseMapping& mapping);

}  // namespace pla
