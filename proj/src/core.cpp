// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/core.hpp"

#include <cmath>
#include <string>

#include "pla/error.hpp"

namespace pla {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::length_mismatch: return "length_mismatch";
    case ErrorKind::domain: return "domain";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::infeasible: return "infeasible";
  }
  return "unknown";
}

double wrap_phase(double radians) noexcept {
  // std::remainder is exact and lands in [-pi, pi]; fold -pi onto pi.
  double r = std::remainder(radians, kTwoPi);
  if (r <= -kPi) r = kPi;
  return r;
}

double angular_distance(double a, double b) noexcept {
  return std::abs(wrap_phase(a - b));
}

bool is_wrapped(double radians) noexcept {
  return radians > -kPi && radians <= kPi;
}

SecretKey::SecretKey(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    require(b <= 1, ErrorKind::invalid_argument, "key bits must be 0 or 1");
  }
}

KeyPhaseMapping::KeyPhaseMapping(unsigned bits_per_subkey) : m_(bits_per_subkey) {
  require(m_ >= 1 && m_ <= kMaxBitsPerSubkey, ErrorKind::invalid_argument,
          "bits per sub-key must be in [1, " + std::to_string(kMaxBitsPerSubkey) + "]");
}

double KeyPhaseMapping::phase_of(unsigned grid_index) const noexcept {
  const unsigned size = alphabet_size();
  const unsigned k = grid_index % size;
  // Signed index keeps the product inside (-pi, pi] without a wrap.
  const int signed_k = k <= size / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(size);
  return signed_k * grid_step();
}

unsigned KeyPhaseMapping::nearest_index(double radians) const {
  require(std::isfinite(radians), ErrorKind::domain, "phase must be finite");
  const double step = grid_step();
  const double k = std::ceil(wrap_phase(radians) / step - 0.5);
  const long size = static_cast<long>(alphabet_size());
  long idx = static_cast<long>(k) % size;
  if (idx < 0) idx += size;
  return static_cast<unsigned>(idx);
}

std::vector<double> KeyPhaseMapping::phase_alphabet() const {
  std::vector<double> out(alphabet_size());
  for (unsigned k = 0; k < out.size(); ++k) out[k] = phase_of(k);
  return out;
}

ChannelSnapshot::ChannelSnapshot(std::vector<double> amplitudes, PhaseVector phases)
    : amplitudes_(std::move(amplitudes)), phases_(std::move(phases)) {
  require(amplitudes_.size() == phases_.size(), ErrorKind::length_mismatch,
          "channel snapshot amplitude/phase length mismatch");
  for (double a : amplitudes_) {
    require(std::isfinite(a) && a > 0.0, ErrorKind::domain,
            "channel amplitudes must be finite and strictly positive");
  }
  for (double p : phases_) {
    require(is_wrapped(p), ErrorKind::domain, "channel phases must lie in (-pi, pi]");
  }
}

std::vector<std::uint8_t> subkey_values(const SecretKey& key, const KeyPhaseMapping& mapping) {
  const unsigned m = mapping.bits_per_subkey();
  require(key.size() % m == 0, ErrorKind::length_mismatch,
          "key length " + std::to_string(key.size()) + " is not divisible by m = " +
              std::to_string(m));
  std::vector<std::uint8_t> values(key.size() / m);
  for (std::size_t i = 0; i < values.size(); ++i) {
    unsigned v = 0;
    for (unsigned b = 0; b < m; ++b) v = (v << 1) | key[i * m + b];
    values[i] = static_cast<std::uint8_t>(v);
  }
  return values;
}

SecretKey key_from_subkeys(std::span<const std::uint8_t> values, const KeyPhaseMapping& mapping) {
  const unsigned m = mapping.bits_per_subkey();
  std::vector<std::uint8_t> bits(values.size() * m);
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] < mapping.alphabet_size(), ErrorKind::invalid_argument,
            "sub-key value outside the alphabet");
    for (unsigned b = 0; b < m; ++b) bits[i * m + b] = (values[i] >> (m - 1 - b)) & 1u;
  }
  return SecretKey(std::move(bits));
}

PhaseVector map_key_to_phases(const SecretKey& key, const KeyPhaseMapping& mapping) {
  const auto values = subkey_values(key, mapping);
  PhaseVector phases(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) phases[i] = mapping.phase_of(values[i]);
  return phases;
}

SecretKey inverse_map(std::span<const double> phases, const KeyPhaseMapping& mapping) {
  std::vector<std::uint8_t> values(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    require(!std::isnan(phases[i]), ErrorKind::domain, "NaN phase cannot be inverse-mapped");
    values[i] = static_cast<std::uint8_t>(mapping.nearest_index(phases[i]));
  }
  return key_from_subkeys(values, mapping);
}

PhaseVector differential_sequence(std::span<const double> x) {
  require(x.size() >= 2, ErrorKind::invalid_argument,
          "differential sequence needs at least two phases");
  PhaseVector out(x.size() - 1);
  for (std::size_t l = 0; l + 1 < x.size(); ++l) out[l] = wrap_phase(x[l + 1] - x[l]);
  return out;
}

DifferentialBitSeq quantize_binary(std::span<const double> delta) {
  constexpr double half_pi = kPi / 2.0;
  DifferentialBitSeq bits(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const double d = wrap_phase(delta[i]);
    bits[i] = (d > -half_pi && d <= half_pi) ? 0 : 1;
  }
  return bits;
}

PhaseVector snap_to_grid(std::span<const double> delta, const KeyPhaseMapping& mapping) {
  PhaseVector out(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    out[i] = mapping.phase_of(mapping.nearest_index(delta[i]));
  }
  return out;
}

DifferentialBitSeq snap_to_grid_indices(std::span<const double> delta,
                                        const KeyPhaseMapping& mapping) {
  DifferentialBitSeq out(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(mapping.nearest_index(delta[i]));
  }
  return out;
}

}  // namespace pla
