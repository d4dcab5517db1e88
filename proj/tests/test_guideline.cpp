// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "pla/error.hpp"
#include "pla/guideline.hpp"

using namespace pla;

namespace {

GuidelineEnsemble sampled(double rho, std::uint64_t N, std::uint64_t trials, std::uint64_t seed = 7) {
  ChannelModelConfig c;
  c.model = ChannelModel::bernoulli_differential;
  c.rho = rho;
  c.num_subcarriers = 56;
  c.seed = seed;
  EnsembleOptions opts;
  opts.threads = 0;
  return sample_guideline_ensemble(ChannelSource(c), KeyPhaseMapping(1), RandomnessTestConfig{},
                                   AttackBudget(N), trials, opts);
}

GuidelineConfig guideline(double p_benchmark, std::uint64_t N, GuidelineMode mode = GuidelineMode::analytic) {
  GuidelineConfig g;
  g.p_benchmark = p_benchmark;
  g.N = N;
  g.mode = mode;
  return g;
}

// Ten hand-made samples with p-values 0.055, 0.155, ..., 0.955.
GuidelineEnsemble ladder() {
  GuidelineEnsemble e;
  e.subcarriers = 56;
  for (int i = 0; i < 10; ++i) e.samples.push_back({0.055 + 0.1 * i, i < 5, 0.5, 0, 0});
  return e;
}

}  // namespace

TEST_SUITE("guideline") {

TEST_CASE("eve success is the product") {
  CHECK(eve_success_probability(1.0, 0.3) == 0.3);
  CHECK(eve_success_probability(0.0, 0.3) == 0.0);
  CHECK(eve_success_probability(0.5, 0.5) == 0.25);
  CHECK_THROWS_AS(eve_success_probability(1.5, 0.1), Error);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(guideline(0.0, 10).validate(), Error);
  CHECK_THROWS_AS(guideline(1.5, 10).validate(), Error);
  auto g = guideline(0.1, 10);
  g.grid_step = 0.6;
  CHECK_THROWS_AS(g.validate(), Error);
  g.grid_step = 0.0;
  CHECK_THROWS_AS(g.validate(), Error);
  CHECK(parse_guideline_mode("empirical") == GuidelineMode::empirical);
  CHECK_THROWS_AS(parse_guideline_mode("oracle"), Error);
}

TEST_CASE("alpha grid") {
  const auto g = alpha_grid(0.01);
  CHECK(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(alpha_grid(0.5) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(alpha_grid(0.3).back() == doctest::Approx(0.9));
}

TEST_CASE("loose benchmark needs no filtering") {
  const auto e = ladder();
  const double p = p_mdlg(AnalyticQuery::binary(56, 0.7, 1000)).value;
  const auto r = optimize_alpha(guideline(p, 1000), e, 0.7);
  CHECK(r.feasible);
  CHECK(r.alpha_star == 0.0);
  CHECK(r.achieved_p_accept == 1.0);
  CHECK(r.achieved_eve_success == doctest::Approx(p));
}

TEST_CASE("grid search returns the first feasible alpha") {
  const auto e = ladder();
  const double p = p_mdlg(AnalyticQuery::binary(56, 0.7, 1000)).value;
  // Needs acceptance <= 0.35: the first alpha with at most 3 of 10 p-values above it is 0.66.
  const auto r = optimize_alpha(guideline(0.35 * p, 1000), e, 0.7);
  REQUIRE(r.feasible);
  CHECK(r.alpha_star == doctest::Approx(0.66));
  CHECK(r.achieved_p_accept == doctest::Approx(0.3));
  for (const auto& pt : r.grid) {
    if (pt.alpha < r.alpha_star - 1e-12) CHECK_FALSE(pt.feasible);
  }
  CHECK(r.achieved_eve_success <= 0.35 * p);
}

TEST_CASE("impossible benchmark rejects PLA") {
  const auto e = ladder();
  const auto r = optimize_alpha(guideline(1e-300, 1000), e, 0.7);
  CHECK_FALSE(r.feasible);
  CHECK(r.strictness() == std::numeric_limits<double>::infinity());
  // alpha = 1 accepts nothing, which the acceptance floor excludes.
  CHECK_FALSE(r.grid.back().feasible);
  CHECK(r.grid.back().p_accept == 0.0);
}

TEST_CASE("acceptance floor") {
  const auto e = ladder();
  const double p = p_mdlg(AnalyticQuery::binary(56, 0.7, 1000)).value;
  auto g = guideline(0.35 * p, 1000);
  g.min_accept = 0.5;
  CHECK_FALSE(optimize_alpha(g, e, 0.7).feasible);
}

TEST_CASE("empirical mode conditions on acceptance") {
  const auto e = ladder();  // successes only at the low p-values
  const auto r = optimize_alpha(guideline(0.1, 1000, GuidelineMode::empirical), e);
  REQUIRE(r.feasible);
  // Joint fraction: successes with p > alpha. At most one of ten from 0.36 on.
  CHECK(r.alpha_star == doctest::Approx(0.36));
  CHECK(r.p_attack_unconditional_empirical == 0.5);
  const auto& at_04 = r.grid[40];
  CHECK(at_04.p_eve == doctest::Approx(0.1));
  CHECK(at_04.p_attack == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("sampled ensemble: rho estimate and thread independence") {
  const auto a = sampled(0.7, 1000, 3000);
  CHECK(std::abs(a.rho_eff() - 0.7) < 0.02);
  ChannelModelConfig c;
  c.model = ChannelModel::bernoulli_differential;
  c.rho = 0.7;
  c.num_subcarriers = 56;
  c.seed = 7;
  EnsembleOptions one;
  const auto b = sample_guideline_ensemble(ChannelSource(c), KeyPhaseMapping(1), RandomnessTestConfig{},
                                           AttackBudget(1000), 3000, one);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].p_value == b.samples[i].p_value);
    CHECK(a.samples[i].attack_success == b.samples[i].attack_success);
  }
}

TEST_CASE("alpha_star trends over budget and benchmark") {
  const auto e = sampled(0.7, 1000, 4000);
  double prev = -1.0;
  for (std::uint64_t N : {100u, 1000u, 10000u, 100000u, 1000000u}) {
    const double s = optimize_alpha(guideline(1e-4, N), e, 0.7).strictness();
    CHECK(s >= prev);
    prev = s;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double pb : {1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
    const double s = optimize_alpha(guideline(pb, 1000000), e, 0.7).strictness();
    CHECK(s <= prev);
    prev = s;
  }
}

TEST_CASE("analytic mode falls back to the ensemble's rho") {
  const auto e = sampled(0.7, 1000, 2000);
  const auto r = optimize_alpha(guideline(1e-4, 1000), e);
  CHECK(r.rho_used == doctest::Approx(e.rho_eff()));
  CHECK(r.p_attack_analytic == doctest::Approx(p_mdlg(AnalyticQuery::binary(56, r.rho_used, 1000)).value));
}

}  // TEST_SUITE
