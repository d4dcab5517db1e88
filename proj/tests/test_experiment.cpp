// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>

#include "pla/error.hpp"
#include "pla/experiment.hpp"

using namespace pla;

namespace {

ErrorKind kind_of(const std::string& json) {
  try {
    parse_experiment_config(json);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("config was accepted: " << json);
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("defaults") {
  const auto c = parse_experiment_config("{}");
  CHECK(c.L() == 56);
  CHECK(c.S == 56);
  CHECK(c.m == 1);
  CHECK(c.channel.model == ChannelModel::bernoulli_differential);
  CHECK(c.protocol.tolerance == 1e-9);
  CHECK(c.randomness.concat_snapshots == 1);
  CHECK(c.output.csv);
}

TEST_CASE("full document") {
  const auto c = parse_experiment_config(R"({
    "channel": {"model": "ar1_complex_gaussian", "rho": 0.6, "seed": 12},
    "protocol": {"m": 2, "S": 64, "tol": 1e-6, "rounds": 3},
    "attack": {"N": 500, "trials": 20, "engine": "rank"},
    "analytics": {"trials": 5, "rho": [0.1, 0.2], "N": [10, 100], "m": [1, 2], "complete_levels": true},
    "randomness": {"alpha": 0.2, "concat": 2, "min_length": 50, "trials": 40},
    "guideline": {"p_benchmark": 1e-3, "grid_step": 0.05, "mode": "empirical", "rho": 0.5, "trials": 30},
    "output": {"directory": "results", "formats": ["csv"]}
  })");
  CHECK(c.channel.model == ChannelModel::ar1_complex_gaussian);
  CHECK(c.L() == 32);
  CHECK(c.S == 64);
  CHECK(c.attack.engine == AttackEngine::rank);
  CHECK(c.analytics.N.size() == 2);
  CHECK(c.randomness.concat_snapshots == 2);
  CHECK(c.guideline.config.mode == GuidelineMode::empirical);
  CHECK(c.guideline.config.N == 500);
  CHECK(*c.guideline.rho == 0.5);
  CHECK(c.output.directory == "results");
  CHECK_FALSE(c.output.jsonl);
}

TEST_CASE("L alone sets S") {
  const auto c = parse_experiment_config(R"({"channel": {"L": 8}, "protocol": {"m": 3}})");
  CHECK(c.S == 24);
}

TEST_CASE("replay fixture") {
  const auto c = parse_experiment_config(
      R"({"protocol": {"S": 4}, "attack": {"replay": {"z": [0, 0.7, 3.1, 3.1], "key": [1, 1, 0, 1]}}})");
  REQUIRE(c.attack.replay);
  CHECK(c.attack.replay->key.size() == 4);
  CHECK(kind_of(R"({"attack": {"replay": {"z": [0, 1], "key": [1]}}})") == ErrorKind::config);
  CHECK(kind_of(R"({"attack": {"replay": {"z": [0, 1], "key": [1, 0], "extra": 1}}})") == ErrorKind::config);
}

TEST_CASE("invalid documents are config errors") {
  CHECK(kind_of("not json") == ErrorKind::config);
  CHECK(kind_of("[]") == ErrorKind::config);
  CHECK(kind_of(R"({"chanel": {}})") == ErrorKind::config);
  CHECK(kind_of(R"({"channel": {"rh0": 0.5}})") == ErrorKind::config);
  CHECK(kind_of(R"({"channel": {"rho": "high"}})") == ErrorKind::config);
  CHECK(kind_of(R"({"channel": {"rho": 1.5}})") == ErrorKind::config);
  CHECK(kind_of(R"({"channel": {"model": "rayleigh"}})") == ErrorKind::config);
  CHECK(kind_of(R"({"protocol": {"S": 64, "m": 3}})") == ErrorKind::config);
  CHECK(kind_of(R"({"channel": {"L": 10}, "protocol": {"S": 64}})") == ErrorKind::config);
  CHECK(kind_of(R"({"randomness": {"alpha": 2}})") == ErrorKind::config);
  CHECK(kind_of(R"({"guideline": {"grid_step": 0.9}})") == ErrorKind::config);
  CHECK(kind_of(R"({"guideline": {"mode": "magic"}})") == ErrorKind::config);
  CHECK(kind_of(R"({"attack": {"N": 0}})") == ErrorKind::config);
  CHECK(kind_of(R"({"attack": {"engine": "fast"}})") == ErrorKind::config);
  CHECK(kind_of(R"({"output": {"formats": ["xml"]}})") == ErrorKind::config);
  CHECK(kind_of(R"({"channel": {"model": "trace_replay"}})") == ErrorKind::config);
}

TEST_CASE("missing file is an io error") {
  try {
    load_experiment_config("/nonexistent/config.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

}  // TEST_SUITE
