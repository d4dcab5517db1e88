// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pla/combinatorics.hpp"
#include "pla/error.hpp"
#include "pla/parallel.hpp"

namespace pla {
namespace {

constexpr double kLn10 = 2.30258509299404568402;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Probability from_log(double ln_value) {
  Probability p;
  p.value = std::exp(ln_value);
  p.log10 = ln_value / kLn10;
  return p;
}

double log_binomial(unsigned n, unsigned k) {
  const Count c = binomial(n, k);
  if (c < (Count{1} << 100)) return std::log(static_cast<double>(c));
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double m = i;
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  fail(ErrorKind::domain, "incomplete beta continued fraction did not converge");
}

}  // namespace

AnalyticQuery AnalyticQuery::binary(std::size_t L, double rho, std::uint64_t N) {
  return AnalyticQuery{L, L, 1, rho, N};
}

AnalyticQuery AnalyticQuery::m_ary(std::size_t S, unsigned m, double rho, std::uint64_t N) {
  require(m >= 1, ErrorKind::invalid_argument, "m must be at least 1");
  return AnalyticQuery{S / m, S, m, rho, N};
}

void AnalyticQuery::validate() const {
  require(m >= 1 && m <= kMaxBitsPerSubkey, ErrorKind::invalid_argument, "m out of range");
  require(S % m == 0, ErrorKind::invalid_argument,
          "key length S = " + std::to_string(S) + " is not divisible by m = " + std::to_string(m));
  require(L == S / m, ErrorKind::invalid_argument, "S must equal m * L");
  require(L >= 2, ErrorKind::invalid_argument, "at least two sub-keys are required");
  require(rho >= 0.0 && rho <= 1.0, ErrorKind::invalid_argument, "rho must lie in [0, 1]");
}

int n_max_binary(std::size_t L, std::uint64_t N) {
  require(L >= 2, ErrorKind::invalid_argument, "L must be at least 2");
  return max_complete_level(static_cast<unsigned>(L - 1), 1, N);
}

int n_max_m_ary(std::size_t S, unsigned m, std::uint64_t N) {
  AnalyticQuery::m_ary(S, m, 0.0, N).validate();
  return max_complete_level(static_cast<unsigned>(S / m - 1), m, N);
}

std::uint64_t complete_level_budget(std::size_t L, int n) {
  return complete_level_budget_m_ary(L, 1, n);
}

std::uint64_t complete_level_budget_m_ary(std::size_t S, unsigned m, int n) {
  AnalyticQuery::m_ary(S, m, 0.0, 1).validate();
  if (n < 0) return 0;
  return saturate_u64(level_offset(static_cast<unsigned>(S / m - 1), m, static_cast<unsigned>(n) + 1));
}

Probability binomial_lower_tail(unsigned trials, double p, int k_max) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::domain, "probability must lie in [0, 1]");
  if (k_max < 0) return Probability{};
  if (static_cast<unsigned>(k_max) >= trials) return from_log(0.0);
  if (p == 0.0) return from_log(0.0);
  if (p == 1.0) return Probability{};
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k_max) + 1);
  double peak = kNegInf;
  for (unsigned k = 0; k <= static_cast<unsigned>(k_max); ++k) {
    const double t = log_binomial(trials, k) + k * log_p + (trials - k) * log_q;
    terms.push_back(t);
    peak = std::max(peak, t);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return from_log(std::min(0.0, peak + std::log(sum)));
}

double transition_probability(double rho) noexcept { return (1.0 - rho) / 2.0; }

double symbol_mismatch_probability(double rho, unsigned m) noexcept {
  if (m == 1) return transition_probability(rho);
  return 1.0 - (1.0 + rho) / static_cast<double>(1u << m);
}

Probability p_mdlg(const AnalyticQuery& query) {
  query.validate();
  require(query.m == 1, ErrorKind::invalid_argument, "p_mdlg covers the binary mapping only");
  const int n_max = n_max_binary(query.L, query.N);
  return binomial_lower_tail(static_cast<unsigned>(query.L - 1), transition_probability(query.rho),
                             n_max);
}

Probability p_m_mdlg(const AnalyticQuery& query) {
  query.validate();
  const int n_max = n_max_m_ary(query.S, query.m, query.N);
  return binomial_lower_tail(static_cast<unsigned>(query.S / query.m - 1),
                             symbol_mismatch_probability(query.rho, query.m), n_max);
}

double regularized_incomplete_beta(double x, double a, double b) {
  require(x >= 0.0 && x <= 1.0, ErrorKind::domain, "incomplete beta needs x in [0, 1]");
  require(a > 0.0 && b > 0.0, ErrorKind::domain, "incomplete beta needs a, b > 0");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double p_m_mdlg_beta_form(const AnalyticQuery& query, BetaArgument argument) {
  query.validate();
  const auto K = static_cast<double>(query.S / query.m - 1);
  const int n_max = n_max_m_ary(query.S, query.m, query.N);
  if (n_max < 0) return 0.0;
  if (n_max >= K) return 1.0;
  const double p = symbol_mismatch_probability(query.rho, query.m);
  const double x = argument == BetaArgument::complement ? 1.0 - p : p;
  return regularized_incomplete_beta(x, K - n_max, n_max + 1.0);
}

Probability random_guess_baseline(std::size_t S, std::uint64_t N) {
  require(N >= 1, ErrorKind::invalid_argument, "budget must be at least 1");
  if (S < 64) {
    require(N <= (std::uint64_t{1} << S), ErrorKind::invalid_argument,
            "budget exceeds the 2^S key space");
  }
  Probability p;
  p.value = std::ldexp(static_cast<double>(N), -static_cast<int>(S));
  p.log10 = std::log10(static_cast<double>(N)) - static_cast<double>(S) * std::log10(2.0);
  return p;
}

double binomial_standard_error(double p, std::uint64_t trials) noexcept {
  if (trials == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

SecretKey random_key(std::size_t bits, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, Stream::key, index);
  std::vector<std::uint8_t> out(bits);
  for (auto& b : out) b = rng.bit();
  return SecretKey(std::move(out));
}

MonteCarloResult monte_carlo_success(const ChannelSource& channels, const KeyPhaseMapping& mapping,
                                     AttackBudget budget, std::uint64_t trials,
                                     const MonteCarloOptions& options) {
  require(trials >= 1, ErrorKind::invalid_argument, "at least one trial is required");
  const std::size_t S = channels.subcarriers() * mapping.bits_per_subkey();
  const std::uint64_t seed = channels.config().seed;
  std::vector<std::uint8_t> hit(trials, 0);
  parallel_for(trials, options.threads, [&](std::uint64_t i) {
    const SecretKey key = random_key(S, seed, i);
    const RoundResult round = run_authentication_round(channels, key, mapping, options.protocol, i);
    AttackReport report;
    if (options.engine == AttackEngine::rank) {
      report = predict_attack_outcome(round.observation, key, mapping, budget);
    } else if (mapping.bits_per_subkey() == 1) {
      report = run_mdlg(round.observation, equality_oracle(key), budget);
    } else {
      report = run_m_mdlg(round.observation, mapping, equality_oracle(key), budget);
    }
    hit[i] = report.success ? 1 : 0;
  });
  MonteCarloResult r;
  r.trials = trials;
  for (auto h : hit) r.successes += h;
  r.rate = static_cast<double>(r.successes) / static_cast<double>(trials);
  r.standard_error = binomial_standard_error(r.rate, trials);
  return r;
}

}  // namespace pla
