/*
   Copyright 2026 crnoma developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* C API of the crnoma shared library.
 *
 * All objects are opaque handles; every fallible call returns a crnoma_status
 * and leaves a thread-local message retrievable via crnoma_last_error().
 * Strings returned as char* are owned by the caller and released with
 * crnoma_free_string(); const char* results stay owned by the library (valid
 * until the originating handle is freed).
 */

#ifndef CRNOMA_H
#define CRNOMA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crnoma_status {
  CRNOMA_OK = 0,
  CRNOMA_ERR_INVALID_ARGUMENT = 1,
  CRNOMA_ERR_VALIDATION = 2,
  CRNOMA_ERR_IO = 3,
  CRNOMA_ERR_INTERNAL = 4
} crnoma_status;

typedef struct crnoma_config crnoma_config;
typedef struct crnoma_table crnoma_table;

const char* crnoma_version(void);

/* Thread-local message from the most recent failing call. Never NULL. */
const char* crnoma_last_error(void);

/* ---- configuration ---- */

/* NULL on failure (see crnoma_last_error). */
crnoma_config* crnoma_config_preset(const char* name);
crnoma_config* crnoma_config_from_json(const char* json_text);
crnoma_config* crnoma_config_from_file(const char* path);
crnoma_config* crnoma_config_clone(const crnoma_config* config);
void crnoma_config_free(crnoma_config* config);

/* Applies a single key as if it appeared in a config file; value_json is the
 * JSON encoding of the value (e.g. "25", "[0.8,0.2]", "\"inf\""). */
crnoma_status crnoma_config_set(crnoma_config* config, const char* key,
                                const char* value_json);

char* crnoma_config_json(const crnoma_config* config);
void crnoma_free_string(char* s);

/* CRNOMA_OK when valid, CRNOMA_ERR_VALIDATION otherwise; *report (optional)
 * receives the human-readable summary either way. */
crnoma_status crnoma_config_validate(const crnoma_config* config,
                                     char** report);

int crnoma_config_num_users(const crnoma_config* config);

int crnoma_scenario_preset_count(void);
crnoma_status crnoma_scenario_preset_info(int index, const char** name,
                                          const char** description);

/* ---- evaluation ---- */

/* Closed-form end-to-end outage probability of `user` (1-based) at transmit
 * SNR rho (linear). *boundary (optional) is set when the threshold sits at or
 * above a hop's SIDNR ceiling, which pins the result to 1. */
crnoma_status crnoma_outage_analytic(const crnoma_config* config, int user,
                                     double rho, double* op, int* boundary);

typedef struct crnoma_mc_result {
  double op;        /* empirical outage probability */
  double ci;        /* 3-sigma normal half width */
  double hop1_cdf;  /* empirical Pr[hop-1 SIDNR < threshold] */
  double hop2_cdf;
  uint64_t trials;
} crnoma_mc_result;

/* Seeded Monte Carlo estimate for every user; results must hold at least
 * crnoma_config_num_users() entries. workers = 0 picks automatically
 * (CRNOMA_WORKERS overrides). Deterministic in (seed, trials). */
crnoma_status crnoma_outage_montecarlo(const crnoma_config* config, double rho,
                                       uint64_t trials, uint64_t seed,
                                       int workers, crnoma_mc_result* results,
                                       int results_len);

/* Largest tolerable SIC residue of a two-user configuration. */
crnoma_status crnoma_max_tolerable_sic(const crnoma_config* config,
                                       double* bound);

/* Raw fading realizations and per-hop powers, one CSV row per trial. */
crnoma_status crnoma_dump_realizations(const crnoma_config* config, double rho,
                                       uint64_t trials, uint64_t seed,
                                       const char* path);

/* ---- sweeps ---- */

/* axis is one of: transmit_snr_db, p_t_db, i_itc_db, phi, epsilon, theta,
 * kappa. mode is "analytic", "mc" or "both". */
crnoma_status crnoma_sweep(const crnoma_config* config, const char* axis,
                           const double* values, int n_values,
                           const char* mode, uint64_t trials, uint64_t seed,
                           int workers, crnoma_table** out);

int crnoma_sweep_preset_count(void);
crnoma_status crnoma_sweep_preset_info(int index, const char** name);

/* Bundled multi-series sweeps ("fig2", "fig3", "fig4"). */
crnoma_status crnoma_sweep_preset(const char* name, const char* mode,
                                  uint64_t trials, uint64_t seed, int workers,
                                  crnoma_table** out);

int crnoma_table_rows(const crnoma_table* table);
crnoma_status crnoma_table_row(const crnoma_table* table, int index,
                               double* axis, const char** user,
                               const char** mode, double* op, double* ci,
                               const char** flags);
char* crnoma_table_csv_string(const crnoma_table* table);
crnoma_status crnoma_table_write_csv(const crnoma_table* table,
                                     const char* path);
crnoma_status crnoma_table_write_plot_script(const crnoma_table* table,
                                             const char* path);
void crnoma_table_free(crnoma_table* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CRNOMA_H */
