// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "pla/error.hpp"

namespace pla {

std::string_view to_string(ChannelModel model) noexcept {
  switch (model) {
    case ChannelModel::bernoulli_differential: return "bernoulli_differential";
    case ChannelModel::ar1_complex_gaussian: return "ar1_complex_gaussian";
    case ChannelModel::flat_fading: return "flat_fading";
    case ChannelModel::trace_replay: return "trace_replay";
  }
  return "unknown";
}

ChannelModel parse_channel_model(std::string_view name) {
  for (auto m : {ChannelModel::bernoulli_differential, ChannelModel::ar1_complex_gaussian,
                 ChannelModel::flat_fading, ChannelModel::trace_replay}) {
    if (name == to_string(m)) return m;
  }
  fail(ErrorKind::config, "unknown channel model '" + std::string(name) + "'");
}

void ChannelModelConfig::validate() const {
  require(rho >= 0.0 && rho <= 1.0, ErrorKind::invalid_argument, "rho must lie in [0, 1]");
  require(num_subcarriers >= 2, ErrorKind::invalid_argument,
          "at least two subcarriers are required");
}

TraceStore::TraceStore(std::vector<ChannelSnapshot> snapshots, TraceSource source)
    : snapshots_(std::move(snapshots)), source_(std::move(source)) {
  if (!snapshots_.empty()) {
    if (source_.subcarriers == 0) source_.subcarriers = snapshots_.front().size();
    for (const auto& s : snapshots_) {
      require(s.size() == source_.subcarriers, ErrorKind::length_mismatch,
              "trace snapshots must share one subcarrier count");
    }
  }
}

const ChannelSnapshot& TraceStore::at(std::size_t index) const {
  require(!snapshots_.empty(), ErrorKind::invalid_argument, "trace store is empty");
  return snapshots_.at(index);
}

const ChannelSnapshot& TraceStore::next() {
  require(!snapshots_.empty(), ErrorKind::invalid_argument, "trace store is empty");
  const auto& s = snapshots_[cursor_];
  cursor_ = (cursor_ + 1) % snapshots_.size();
  return s;
}

namespace {

using Complex = std::complex<double>;

Complex unit_complex_gaussian(Rng& rng) {
  constexpr double scale = 0.70710678118654752440;  // 1/sqrt(2): E|g|^2 = 1
  const double re = rng.standard_normal();
  const double im = rng.standard_normal();
  return {scale * re, scale * im};
}

ChannelSnapshot from_gains(const std::vector<Complex>& gains) {
  std::vector<double> amplitudes(gains.size());
  PhaseVector phases(gains.size());
  for (std::size_t l = 0; l < gains.size(); ++l) {
    amplitudes[l] = std::max(std::abs(gains[l]), std::numeric_limits<double>::min());
    phases[l] = wrap_phase(std::arg(gains[l]));
  }
  return {std::move(amplitudes), std::move(phases)};
}

ChannelSnapshot sample_bernoulli_differential(double rho, std::size_t L, Rng& rng) {
  const double keep = (1.0 + rho) / 2.0;
  PhaseVector theta(L);
  theta[0] = rng.uniform_phase();
  for (std::size_t l = 0; l + 1 < L; ++l) {
    const bool same_region = rng.bernoulli(keep);
    // Uniform on the bit-0 region (-pi/2, pi/2]; the bit-1 region is its
    // rotation by pi.
    double delta = kPi / 2.0 - kPi * rng.uniform01();
    if (!same_region) delta = wrap_phase(delta + kPi);
    theta[l + 1] = wrap_phase(theta[l] + delta);
  }
  return {std::vector<double>(L, 1.0), std::move(theta)};
}

ChannelSnapshot sample_ar1(double rho, std::size_t L, Rng& rng) {
  const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  std::vector<Complex> g(L);
  g[0] = unit_complex_gaussian(rng);
  for (std::size_t l = 0; l + 1 < L; ++l) {
    g[l + 1] = rho * g[l] + innovation * unit_complex_gaussian(rng);
  }
  return from_gains(g);
}

ChannelSnapshot sample_flat(std::size_t L, Rng& rng) {
  const double amplitude =
      std::max(std::abs(unit_complex_gaussian(rng)), std::numeric_limits<double>::min());
  const double phase = rng.uniform_phase();
  return {std::vector<double>(L, amplitude), PhaseVector(L, phase)};
}

}  // namespace

ChannelSnapshot sample_channel(const ChannelModelConfig& cfg, Rng& rng, TraceStore* store) {
  cfg.validate();
  switch (cfg.model) {
    case ChannelModel::bernoulli_differential:
      return sample_bernoulli_differential(cfg.rho, cfg.num_subcarriers, rng);
    case ChannelModel::ar1_complex_gaussian:
      return sample_ar1(cfg.rho, cfg.num_subcarriers, rng);
    case ChannelModel::flat_fading:
      return sample_flat(cfg.num_subcarriers, rng);
    case ChannelModel::trace_replay:
      require(store != nullptr && !store->empty(), ErrorKind::invalid_argument,
              "trace replay requires a non-empty trace store");
      return store->next();
  }
  fail(ErrorKind::invalid_argument, "unsupported channel model");
}

ChannelSource::ChannelSource(ChannelModelConfig cfg, std::shared_ptr<const TraceStore> store)
    : cfg_(cfg), store_(std::move(store)) {
  if (cfg_.model == ChannelModel::trace_replay) {
    require(store_ != nullptr && !store_->empty(), ErrorKind::invalid_argument,
            "trace replay requires a non-empty trace store");
    cfg_.num_subcarriers = store_->subcarriers();
  }
  cfg_.validate();
}

std::size_t ChannelSource::subcarriers() const noexcept { return cfg_.num_subcarriers; }

ChannelSnapshot ChannelSource::draw(Stream stream, std::uint64_t index) const {
  if (cfg_.model == ChannelModel::trace_replay) {
    return store_->at(static_cast<std::size_t>(index % store_->size()));
  }
  Rng rng(cfg_.seed, stream, index);
  return sample_channel(cfg_, rng);
}

double estimate_correlation(std::span<const ChannelSnapshot> snapshots) {
  require(snapshots.size() >= 2, ErrorKind::invalid_argument,
          "correlation estimate needs at least two snapshots");
  Complex sum_x{}, sum_y{};
  std::uint64_t count = 0;
  for (const auto& s : snapshots) {
    require(s.size() >= 2, ErrorKind::invalid_argument, "snapshots need at least two subcarriers");
    for (std::size_t l = 0; l + 1 < s.size(); ++l) {
      sum_x += std::polar(s.amplitudes()[l], s.phases()[l]);
      sum_y += std::polar(s.amplitudes()[l + 1], s.phases()[l + 1]);
      ++count;
    }
  }
  const Complex mean_x = sum_x / static_cast<double>(count);
  const Complex mean_y = sum_y / static_cast<double>(count);
  Complex cross{};
  double var_x = 0.0, var_y = 0.0;
  for (const auto& s : snapshots) {
    for (std::size_t l = 0; l + 1 < s.size(); ++l) {
      const Complex dx = std::polar(s.amplitudes()[l], s.phases()[l]) - mean_x;
      const Complex dy = std::polar(s.amplitudes()[l + 1], s.phases()[l + 1]) - mean_y;
      cross += std::conj(dx) * dy;
      var_x += std::norm(dx);
      var_y += std::norm(dy);
    }
  }
  require(var_x > 0.0 && var_y > 0.0, ErrorKind::domain,
          "degenerate (zero-variance) channel ensemble");
  const double r = cross.real() / std::sqrt(var_x * var_y);
  return std::clamp(r, -1.0, 1.0);
}

TransitionEstimate estimate_transition_probability(std::span<const ChannelSnapshot> snapshots) {
  require(!snapshots.empty(), ErrorKind::invalid_argument,
          "transition estimate needs at least one snapshot");
  TransitionEstimate est;
  for (const auto& s : snapshots) {
    const auto bits = quantize_binary(differential_sequence(s.phases()));
    for (auto b : bits) est.flips += b;
    est.pairs += bits.size();
  }
  est.probability = static_cast<double>(est.flips) / static_cast<double>(est.pairs);
  est.rho_eff = 1.0 - 2.0 * est.probability;
  return est;
}

TransitionEstimate estimate_transition_probability(const ChannelSnapshot& snapshot) {
  return estimate_transition_probability(std::span<const ChannelSnapshot>(&snapshot, 1));
}

}  // namespace pla
