// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>

#include "pla/core.hpp"
#include "pla/rng.hpp"

using namespace pla;

TEST_SUITE("rng") {

TEST_CASE("substreams are reproducible and distinct") {
  Rng a(42, Stream::channel, 3), b(42, Stream::channel, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(substream_seed(42, Stream::channel, 3) != substream_seed(42, Stream::protocol, 3));
  CHECK(substream_seed(42, Stream::channel, 3) != substream_seed(42, Stream::channel, 4));
  CHECK(substream_seed(42, Stream::channel, 3) != substream_seed(43, Stream::channel, 3));
}

TEST_CASE("uniform phase stays wrapped and has zero circular mean") {
  Rng rng(1);
  std::complex<double> acc = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double p = rng.uniform_phase();
    CHECK(is_wrapped(p));
    acc += std::polar(1.0, p);
  }
  CHECK(std::abs(acc) / n < 0.02);
}

TEST_CASE("normal moments") {
  Rng rng(2);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.standard_normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("von Mises concentration") {
  // E[cos X] = I1(kappa) / I0(kappa); 0.8934 at kappa = 5.
  Rng rng(4);
  double c = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) c += std::cos(rng.von_mises(5.0));
  CHECK(c / n == doctest::Approx(std::cyl_bessel_i(1.0, 5.0) / std::cyl_bessel_i(0.0, 5.0)).epsilon(0.01));
}

}  // TEST_SUITE
