// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pla {

/// Named substreams. Every random draw in an experiment comes from
/// (root seed, stream, index), so results do not depend on thread count or
/// the order in which trials are scheduled.
enum class Stream : std::uint64_t {
  channel = 1,
  eve_channel = 2,
  protocol = 3,
  key = 4,
  attack = 5,
  test = 6,
  noise = 7,
};

std::string_view to_string(Stream stream) noexcept;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t substream_seed(std::uint64_t root, Stream stream, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t root, Stream stream, std::uint64_t index)
      : engine_(substream_seed(root, stream, index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01();

  /// Uniform phase on (-pi, pi].
  double uniform_phase();

  double standard_normal();

  bool bernoulli(double p);

  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

  /// Von Mises draw centred on 0 with concentration kappa > 0.
  double von_mises(double kappa);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pla
