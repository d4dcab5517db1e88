// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// Saturating candidate counting for the likelihood-ordered key enumeration.
// A "level" n holds every candidate whose differential reference differs from
// Eve's in exactly n of K positions; with a 2^m-ary alphabet that level has
// 2^m * C(K, n) * (2^m - 1)^n key candidates.

#pragma once

#include <cstdint>
#include <limits>

namespace pla {

__extension__ typedef unsigned __int128 Count;

inline constexpr Count kCountMax = std::numeric_limits<Count>::max();

constexpr Count sat_add(Count a, Count b) noexcept {
  return a > kCountMax - b ? kCountMax : a + b;
}

constexpr Count sat_mul(Count a, Count b) noexcept {
  if (a == 0 || b == 0) return 0;
  return a > kCountMax / b ? kCountMax : a * b;
}

constexpr Count sat_pow(Count base, unsigned exp) noexcept {
  Count r = 1;
  for (unsigned i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

/// C(k, n), saturating.
constexpr Count binomial(unsigned k, unsigned n) noexcept {
  if (n > k) return 0;
  if (n > k - n) n = k - n;
  Count r = 1;
  for (unsigned i = 1; i <= n; ++i) {
    // r * (k - n + i) / i stays exact because r = C(k - n + i - 1, i - 1).
    const Count num = sat_mul(r, k - n + i);
    if (num == kCountMax) return kCountMax;
    r = num / i;
  }
  return r;
}

constexpr Count level_size(unsigned positions, unsigned m, unsigned n) noexcept {
  const Count alphabet = Count{1} << m;
  return sat_mul(alphabet, sat_mul(binomial(positions, n), sat_pow(alphabet - 1, n)));
}

/// Candidates strictly before level n.
constexpr Count level_offset(unsigned positions, unsigned m, unsigned n) noexcept {
  Count total = 0;
  for (unsigned j = 0; j < n && j <= positions; ++j) total = sat_add(total, level_size(positions, m, j));
  return total;
}

/// Largest n' such that every level 0..n' fits in `budget`; -1 if none does.
constexpr int max_complete_level(unsigned positions, unsigned m, std::uint64_t budget) noexcept {
  int best = -1;
  Count total = 0;
  for (unsigned n = 0; n <= positions; ++n) {
    total = sat_add(total, level_size(positions, m, n));
    if (total > budget) break;
    best = static_cast<int>(n);
  }
  return best;
}

inline std::uint64_t saturate_u64(Count c) noexcept {
  return c > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                       : static_cast<std::uint64_t>(c);
}

}  // namespace pla
