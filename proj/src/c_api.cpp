// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/pla.h"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "pla/analytics.hpp"
#include "pla/attack.hpp"
#include "pla/commands.hpp"
#include "pla/error.hpp"
#include "pla/experiment.hpp"
#include "pla/randomness.hpp"

struct pla_session {
  pla::ExperimentConfig config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> output_dir;
  std::vector<std::string> outputs;
  std::string summary;

  pla::ExperimentConfig effective() const {
    pla::ExperimentConfig c = config;
    if (seed) c.channel.seed = *seed;
    if (threads) c.threads = *threads;
    if (output_dir) c.output.directory = *output_dir;
    return c;
  }

  void record(const pla::CommandResult& r) {
    outputs.clear();
    for (const auto& p : r.outputs) outputs.push_back(p.string());
    summary = r.summary;
  }
};

struct pla_trace {
  pla::TraceStore store;
};

namespace {

thread_local std::string g_last_error;

pla_status status_of(pla::ErrorKind kind) {
  switch (kind) {
    case pla::ErrorKind::invalid_argument: return PLA_ERR_INVALID_ARGUMENT;
    case pla::ErrorKind::length_mismatch: return PLA_ERR_LENGTH_MISMATCH;
    case pla::ErrorKind::domain: return PLA_ERR_DOMAIN;
    case pla::ErrorKind::config: return PLA_ERR_CONFIG;
    case pla::ErrorKind::io: return PLA_ERR_IO;
    case pla::ErrorKind::parse: return PLA_ERR_PARSE;
    case pla::ErrorKind::infeasible: return PLA_ERR_INFEASIBLE;
  }
  return PLA_ERR_INTERNAL;
}

template <typename F>
pla_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return PLA_OK;
  } catch (const pla::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PLA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PLA_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  pla::require(p != nullptr, pla::ErrorKind::invalid_argument, std::string(what) + " is NULL");
}

template <typename Cmd>
pla_status run_command(pla_session* s, Cmd&& cmd) {
  return guarded([&] {
    need(s, "session");
    s->record(cmd(s->effective()));
  });
}

void store_probability(const pla::Probability& p, double* value, double* log10) {
  need(value, "value");
  *value = p.value;
  if (log10) *log10 = p.log10;
}

}  // namespace

extern "C" {

const char* pla_status_name(pla_status status) {
  switch (status) {
    case PLA_OK: return "ok";
    case PLA_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case PLA_ERR_LENGTH_MISMATCH: return "length_mismatch";
    case PLA_ERR_DOMAIN: return "domain";
    case PLA_ERR_CONFIG: return "config";
    case PLA_ERR_IO: return "io";
    case PLA_ERR_PARSE: return "parse";
    case PLA_ERR_INFEASIBLE: return "infeasible";
    case PLA_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* pla_last_error(void) { return g_last_error.c_str(); }

const char* pla_version(void) { return "0.1.0"; }

pla_status pla_session_create(pla_session** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pla_session();
  });
}

void pla_session_destroy(pla_session* session) { delete session; }

pla_status pla_session_load_config_file(pla_session* session, const char* path) {
  return guarded([&] {
    need(session, "session");
    need(path, "path");
    session->config = pla::load_experiment_config(path);
  });
}

pla_status pla_session_load_config_text(pla_session* session, const char* json) {
  return guarded([&] {
    need(session, "session");
    need(json, "json");
    session->config = pla::parse_experiment_config(json);
  });
}

pla_status pla_session_set_seed(pla_session* session, uint64_t seed) {
  return guarded([&] {
    need(session, "session");
    session->seed = seed;
  });
}

pla_status pla_session_set_threads(pla_session* session, unsigned threads) {
  return guarded([&] {
    need(session, "session");
    session->threads = threads;
  });
}

pla_status pla_session_set_output_dir(pla_session* session, const char* directory) {
  return guarded([&] {
    need(session, "session");
    need(directory, "directory");
    pla::require(*directory != '\0', pla::ErrorKind::invalid_argument,
                 "output directory must not be empty");
    session->output_dir = directory;
  });
}

pla_status pla_cmd_simulate(pla_session* session) {
  return run_command(session, [](const pla::ExperimentConfig& c) { return pla::cmd_simulate(c); });
}

pla_status pla_cmd_attack(pla_session* session) {
  return run_command(session, [](const pla::ExperimentConfig& c) { return pla::cmd_attack(c); });
}

pla_status pla_cmd_analytic(pla_session* session) {
  return run_command(session, [](const pla::ExperimentConfig& c) { return pla::cmd_analytic(c); });
}

pla_status pla_cmd_sweep(pla_session* session) {
  return run_command(session, [](const pla::ExperimentConfig& c) { return pla::cmd_sweep(c); });
}

pla_status pla_cmd_test_randomness(pla_session* session, const char* trace_path) {
  return run_command(session, [&](const pla::ExperimentConfig& c) {
    std::optional<std::filesystem::path> trace;
    if (trace_path) trace = trace_path;
    return pla::cmd_test_randomness(c, trace);
  });
}

pla_status pla_cmd_optimize_alpha(pla_session* session) {
  return run_command(session,
                     [](const pla::ExperimentConfig& c) { return pla::cmd_optimize_alpha(c); });
}

pla_status pla_cmd_ingest_trace(pla_session* session, const char* trace_path) {
  return run_command(session, [&](const pla::ExperimentConfig& c) {
    need(trace_path, "trace_path");
    return pla::cmd_ingest_trace(c, trace_path);
  });
}

size_t pla_session_output_count(const pla_session* session) {
  return session ? session->outputs.size() : 0;
}

const char* pla_session_output_path(const pla_session* session, size_t index) {
  if (!session || index >= session->outputs.size()) return nullptr;
  return session->outputs[index].c_str();
}

const char* pla_session_summary(const pla_session* session) {
  return session ? session->summary.c_str() : "";
}

pla_status pla_trace_open(const char* path, pla_trace** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new pla_trace{pla::read_trace_csv(std::string(path))};
  });
}

void pla_trace_close(pla_trace* trace) { delete trace; }

pla_status pla_trace_summarize(const pla_trace* trace, pla_trace_summary* out) {
  return guarded([&] {
    need(trace, "trace");
    need(out, "out");
    const pla::TraceSummary s = pla::summarize_trace(trace->store);
    out->snapshots = s.snapshots;
    out->subcarriers = s.subcarriers;
    out->transition_probability = s.transition_probability;
    out->rho_eff = s.rho_eff;
    out->has_correlation = s.correlation ? 1 : 0;
    out->correlation = s.correlation.value_or(0.0);
  });
}

pla_status pla_n_max(size_t S, unsigned m, uint64_t N, int* out) {
  return guarded([&] {
    need(out, "out");
    *out = pla::n_max_m_ary(S, m, N);
  });
}

pla_status pla_p_mdlg(size_t L, double rho, uint64_t N, double* value, double* log10) {
  return guarded([&] {
    store_probability(pla::p_mdlg(pla::AnalyticQuery::binary(L, rho, N)), value, log10);
  });
}

pla_status pla_p_m_mdlg(size_t S, unsigned m, double rho, uint64_t N, double* value,
                        double* log10) {
  return guarded([&] {
    store_probability(pla::p_m_mdlg(pla::AnalyticQuery::m_ary(S, m, rho, N)), value, log10);
  });
}

pla_status pla_incomplete_beta(double x, double a, double b, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pla::regularized_incomplete_beta(x, a, b);
  });
}

pla_status pla_frequency_test(const uint8_t* bits, size_t n, double alpha, double* p_value,
                              int* accepted) {
  return guarded([&] {
    need(bits, "bits");
    need(p_value, "p_value");
    pla::RandomnessTestConfig cfg;
    cfg.alpha = alpha;
    cfg.validate();
    for (size_t i = 0; i < n; ++i) {
      pla::require(bits[i] <= 1, pla::ErrorKind::invalid_argument, "bits must be 0 or 1");
    }
    const pla::TestResult r = pla::frequency_test({bits, n}, cfg);
    *p_value = r.p_value;
    if (accepted) *accepted = r.accepted ? 1 : 0;
  });
}

pla_status pla_attack_run(const double* z, size_t L, unsigned m, const uint8_t* key,
                          uint64_t budget, pla_attack_report* report, uint8_t* recovered_key) {
  return guarded([&] {
    need(z, "z");
    need(key, "key");
    need(report, "report");
    const pla::KeyPhaseMapping mapping(m);
    const pla::SecretKey truth(std::vector<std::uint8_t>(key, key + L * m));
    const pla::EveObservation obs{pla::PhaseVector(z, z + L)};
    const pla::AttackBudget b(budget);
    const pla::AttackReport r = m == 1 ? pla::run_mdlg(obs, pla::equality_oracle(truth), b)
                                       : pla::run_m_mdlg(obs, mapping, pla::equality_oracle(truth), b);
    report->success = r.success ? 1 : 0;
    report->candidates_tried = r.candidates_tried;
    report->n_reached = r.n_reached;
    if (recovered_key && r.recovered_key) {
      const auto bits = r.recovered_key->bits();
      std::copy(bits.begin(), bits.end(), recovered_key);
    }
  });
}

}  // extern "C"
