/* Copyright 2026 The PLA Toolkit Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the PLA toolkit. Every function returns a pla_status; on
 * failure pla_last_error() holds a message for the calling thread. Handles
 * are opaque and must be released with their matching destroy/close call.
 */

#ifndef PLA_PLA_H_
#define PLA_PLA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PLA_BUILDING_LIBRARY)
#define PLA_API __attribute__((visibility("default")))
#else
#define PLA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pla_status {
  PLA_OK = 0,
  PLA_ERR_INVALID_ARGUMENT = 1,
  PLA_ERR_LENGTH_MISMATCH = 2,
  PLA_ERR_DOMAIN = 3,
  PLA_ERR_CONFIG = 4,
  PLA_ERR_IO = 5,
  PLA_ERR_PARSE = 6,
  PLA_ERR_INFEASIBLE = 7,
  PLA_ERR_INTERNAL = 8
} pla_status;

/* Stable machine-readable category, e.g. "config". */
PLA_API const char* pla_status_name(pla_status status);

/* Message of the last failure on this thread; "" if none. */
PLA_API const char* pla_last_error(void);

PLA_API const char* pla_version(void);

/* ---- Sessions: an experiment configuration plus command outputs ---- */

typedef struct pla_session pla_session;

/* Starts from the default configuration. */
PLA_API pla_status pla_session_create(pla_session** out);
PLA_API void pla_session_destroy(pla_session* session);

/* Replaces the configuration (JSON). Seed, thread and output overrides set
 * earlier are kept. */
PLA_API pla_status pla_session_load_config_file(pla_session* session, const char* path);
PLA_API pla_status pla_session_load_config_text(pla_session* session, const char* json);

PLA_API pla_status pla_session_set_seed(pla_session* session, uint64_t seed);
/* 0 selects the hardware concurrency. */
PLA_API pla_status pla_session_set_threads(pla_session* session, unsigned threads);
PLA_API pla_status pla_session_set_output_dir(pla_session* session, const char* directory);

PLA_API pla_status pla_cmd_simulate(pla_session* session);
PLA_API pla_status pla_cmd_attack(pla_session* session);
PLA_API pla_status pla_cmd_analytic(pla_session* session);
PLA_API pla_status pla_cmd_sweep(pla_session* session);
/* trace_path may be NULL to test synthetic snapshots. */
PLA_API pla_status pla_cmd_test_randomness(pla_session* session, const char* trace_path);
PLA_API pla_status pla_cmd_optimize_alpha(pla_session* session);
PLA_API pla_status pla_cmd_ingest_trace(pla_session* session, const char* trace_path);

/* Files written by the last successful command. Pointers stay valid until
 * the next command or destroy. */
PLA_API size_t pla_session_output_count(const pla_session* session);
PLA_API const char* pla_session_output_path(const pla_session* session, size_t index);
PLA_API const char* pla_session_summary(const pla_session* session);

/* ---- Traces ---- */

typedef struct pla_trace pla_trace;

typedef struct pla_trace_summary {
  size_t snapshots;
  size_t subcarriers;
  double transition_probability;
  double rho_eff;
  double correlation;
  int has_correlation;
} pla_trace_summary;

PLA_API pla_status pla_trace_open(const char* path, pla_trace** out);
PLA_API void pla_trace_close(pla_trace* trace);
PLA_API pla_status pla_trace_summarize(const pla_trace* trace, pla_trace_summary* out);

/* ---- Numerics ---- */

/* Largest complete enumeration level affordable with budget N for an S-bit
 * key under m bits per sub-key; -1 when not even level 0 fits. */
PLA_API pla_status pla_n_max(size_t S, unsigned m, uint64_t N, int* out);

/* Closed-form attack success; log10 may be NULL. */
PLA_API pla_status pla_p_mdlg(size_t L, double rho, uint64_t N, double* value, double* log10);
PLA_API pla_status pla_p_m_mdlg(size_t S, unsigned m, double rho, uint64_t N, double* value,
                                double* log10);

/* Regularized incomplete beta I_x(a, b). */
PLA_API pla_status pla_incomplete_beta(double x, double a, double b, double* out);

/* Frequency (monobit) test over bits in {0, 1}. */
PLA_API pla_status pla_frequency_test(const uint8_t* bits, size_t n, double alpha,
                                      double* p_value, int* accepted);

typedef struct pla_attack_report {
  int success;
  uint64_t candidates_tried;
  int n_reached;
} pla_attack_report;

/* Runs the candidate enumeration on Eve's observation z (L phases) against
 * the true key (L * m bits). recovered_key, if not NULL, receives L * m bits
 * on success. */
PLA_API pla_status pla_attack_run(const double* z, size_t L, unsigned m, const uint8_t* key,
                                  uint64_t budget, pla_attack_report* report,
                                  uint8_t* recovered_key);

#ifdef __cplusplus
}
#endif

#endif /* PLA_PLA_H_ */
