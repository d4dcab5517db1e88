// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form attack success probabilities, the special functions behind
// them, and a Monte Carlo harness to check them against simulation.
//
// With per-position mismatch probability p between Eve's reference and the
// true differential sequence, K = S/m - 1 positions, and Eve able to afford
// every level up to n_max, the success probability is the binomial lower tail
//   sum_{n=0}^{n_max} C(K, n) p^n (1-p)^(K-n).
// For the binary mapping p = (1 - rho)/2; for 2^m-ary, p = 1 - (1 + rho)/2^m.
// The tail is evaluated in log space so values far below 1e-300 survive.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "pla/attack.hpp"
#include "pla/channel.hpp"
#include "pla/core.hpp"

namespace pla {

/// A probability with its log10, so tiny values are never lost to underflow.
struct Probability {
  double value = 0.0;
  double log10 = -std::numeric_limits<double>::infinity();
};

struct AnalyticQuery {
  std::size_t L = 0;   // subcarriers
  std::size_t S = 0;   // key bits
  unsigned m = 1;      // bits per sub-key
  double rho = 0.0;
  std::uint64_t N = 1; // oracle budget

  static AnalyticQuery binary(std::size_t L, double rho, std::uint64_t N);
  static AnalyticQuery m_ary(std::size_t S, unsigned m, double rho, std::uint64_t N);

  void validate() const;
};

/// Largest complete level under 2 * sum_{n<=n'} C(L-1, n) <= N; -1 if N < 2.
int n_max_binary(std::size_t L, std::uint64_t N);

/// Largest complete level under 2^m * sum_{n<=n'} C(S/m-1, n) (2^m-1)^n <= N.
int n_max_m_ary(std::size_t S, unsigned m, std::uint64_t N);

/// Smallest budget that completes every level up to n (binary mapping).
std::uint64_t complete_level_budget(std::size_t L, int n);
std::uint64_t complete_level_budget_m_ary(std::size_t S, unsigned m, int n);

/// sum_{k=0}^{k_max} C(trials, k) p^k (1-p)^(trials-k).
Probability binomial_lower_tail(unsigned trials, double p, int k_max);

double transition_probability(double rho) noexcept;               // (1 - rho)/2
double symbol_mismatch_probability(double rho, unsigned m) noexcept;  // 1 - (1+rho)/2^m

Probability p_mdlg(const AnalyticQuery& query);
Probability p_m_mdlg(const AnalyticQuery& query);

/// I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double x, double a, double b);

/// Which argument the incomplete-beta closed form is evaluated at.
enum class BetaArgument {
  /// I_{1-p}(K - n_max, n_max + 1); equals the binomial lower tail.
  complement,
  /// I_{p}(K - n_max, n_max + 1), the subscript as commonly printed.
  as_printed,
};

/// Incomplete-beta form of p_m_mdlg (binary when m = 1). Cross-check only.
double p_m_mdlg_beta_form(const AnalyticQuery& query, BetaArgument argument);

/// N / 2^S.
Probability random_guess_baseline(std::size_t S, std::uint64_t N);

enum class AttackEngine {
  /// Walk the candidate stream against an equality oracle.
  enumerate,
  /// Rank the true key in the enumeration order (same reports, O(L) time).
  rank,
};

struct MonteCarloOptions {
  unsigned threads = 1;
  AttackEngine engine = AttackEngine::enumerate;
  ProtocolOptions protocol{};
};

struct MonteCarloResult {
  double rate = 0.0;
  double standard_error = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

/// Per trial: fresh key, fresh channels, full protocol round, then the
/// attack on Eve's observation. Reproducible for a given channel seed.
MonteCarloResult monte_carlo_success(const ChannelSource& channels, const KeyPhaseMapping& mapping,
                                     AttackBudget budget, std::uint64_t trials,
                                     const MonteCarloOptions& options = {});

/// Uniformly random S-bit key from the (seed, key, index) substream.
SecretKey random_key(std::size_t bits, std::uint64_t seed, std::uint64_t index);

/// Binomial standard error sqrt(p (1 - p) / trials).
double binomial_standard_error(double p, std::uint64_t trials) noexcept;

}  // namespace pla
