// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/rng.hpp"

#include <cmath>

#include "pla/core.hpp"

namespace pla {

std::string_view to_string(Stream stream) noexcept {
  switch (stream) {
    case Stream::channel: return "channel";
    case Stream::eve_channel: return "eve_channel";
    case Stream::protocol: return "protocol";
    case Stream::key: return "key";
    case Stream::attack: return "attack";
    case Stream::test: return "test";
    case Stream::noise: return "noise";
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t root, Stream stream, std::uint64_t index) noexcept {
  std::uint64_t h = mix64(root);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  return mix64(h ^ mix64(index));
}

double Rng::uniform01() {
  // 53 random mantissa bits; identical across standard libraries.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_phase() { return kPi - kTwoPi * uniform01(); }

double Rng::standard_normal() {
  // Box-Muller; u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

double Rng::von_mises(double kappa) {
  // Best & Fisher (1979) rejection sampler.
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double u1 = uniform01();
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = uniform01();
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double u3 = uniform01();
      const double theta = std::acos(std::fmax(-1.0, std::fmin(1.0, f)));
      return u3 > 0.5 ? theta : -theta;
    }
  }
}

}  // namespace pla
