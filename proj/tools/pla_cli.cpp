// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

// pla: command-line front end over the C API.
//
// Exit status is 0 on success, otherwise the pla_status code (64 for usage
// errors). Failures print "error: <category>: <message>" on stderr.

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pla/pla.h"

namespace {

constexpr int kUsageExit = 64;

int report(pla_status status) {
  std::fprintf(stderr, "error: %s: %s\n", pla_status_name(status), pla_last_error());
  return static_cast<int>(status);
}

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

pla_status configure(pla_session* s, const Globals& g) {
  pla_status st = PLA_OK;
  if (!g.config.empty() && (st = pla_session_load_config_file(s, g.config.c_str())) != PLA_OK) return st;
  if (g.seed && (st = pla_session_set_seed(s, *g.seed)) != PLA_OK) return st;
  if (g.out && (st = pla_session_set_output_dir(s, g.out->c_str())) != PLA_OK) return st;
  if (g.threads && (st = pla_session_set_threads(s, *g.threads)) != PLA_OK) return st;
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Challenge-response physical-layer authentication toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", pla_version());

  Globals g;
  app.add_option("--config", g.config, "Experiment configuration (JSON)");
  app.add_option("--seed", g.seed, "Root 64-bit seed (overrides channel.seed)");
  app.add_option("--out", g.out, "Output directory (overrides output.directory)");
  app.add_option("--threads", g.threads, "Worker threads, 0 = hardware concurrency");

  auto* simulate = app.add_subcommand("simulate", "Run authentication rounds, write transcripts");
  auto* attack = app.add_subcommand("attack", "Attack simulated rounds, one report row per trial");
  auto* analytic = app.add_subcommand("analytic", "Closed-form success probabilities over a grid");
  auto* sweep = app.add_subcommand("sweep", "Closed-form and Monte Carlo success over a grid");
  auto* randomness = app.add_subcommand("test-randomness", "Frequency test on channel responses");
  std::string randomness_trace;
  randomness->add_option("--trace", randomness_trace,
                         "Trace CSV to test instead of synthetic channels");
  auto* optimize = app.add_subcommand("optimize-alpha", "Choose the randomness-test threshold");
  auto* ingest = app.add_subcommand("ingest-trace", "Parse a trace CSV and summarize it");
  std::string ingest_path;
  ingest->add_option("trace", ingest_path, "Trace CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: usage: %s\n", e.what());
    return kUsageExit;
  }

  pla_session* session = nullptr;
  pla_status st = pla_session_create(&session);
  if (st != PLA_OK) return report(st);
  st = configure(session, g);
  if (st == PLA_OK) {
    if (simulate->parsed()) {
      st = pla_cmd_simulate(session);
    } else if (attack->parsed()) {
      st = pla_cmd_attack(session);
    } else if (analytic->parsed()) {
      st = pla_cmd_analytic(session);
    } else if (sweep->parsed()) {
      st = pla_cmd_sweep(session);
    } else if (randomness->parsed()) {
      st = pla_cmd_test_randomness(session,
                                   randomness_trace.empty() ? nullptr : randomness_trace.c_str());
    } else if (optimize->parsed()) {
      st = pla_cmd_optimize_alpha(session);
    } else if (ingest->parsed()) {
      st = pla_cmd_ingest_trace(session, ingest_path.c_str());
    }
  }
  int code = 0;
  if (st != PLA_OK) {
    code = report(st);
  } else {
    std::printf("%s\n", pla_session_summary(session));
    for (std::size_t i = 0; i < pla_session_output_count(session); ++i) {
      std::printf("wrote %s\n", pla_session_output_path(session, i));
    }
  }
  pla_session_destroy(session);
  return code;
}
