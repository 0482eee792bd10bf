// Copyright 2026 The shordelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the shordelay library.
 *
 * Every fallible call returns an sd_status; on failure a one-line description
 * is available from sd_last_error() on the same thread until the next call.
 * Objects are opaque handles created by sd_*_create / sd_* constructors and
 * released by the matching sd_*_destroy (which accept NULL).
 *
 * Angles are radians and times are in units where hbar = 1; a splitting
 * Delta and a delay tau enter only through the product tau * Delta.
 */
#ifndef SHORDELAY_H_
#define SHORDELAY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SHORDELAY_BUILDING)
#define SD_API __declspec(dllexport)
#else
#define SD_API __declspec(dllimport)
#endif
#else
#define SD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sd_status {
    SD_OK = 0,
    SD_INVALID_ARGUMENT = 1,
    SD_COMPUTATION_ERROR = 2,
    SD_SIZE_LIMIT = 3,
    SD_BUFFER_TOO_SMALL = 4,
    SD_INTERNAL_ERROR = 5
} sd_status;

typedef enum sd_phase_convention {
    SD_PHASE_HAMMING = 0,  /* phi(j) = sum of excited-qubit splittings * tau */
    SD_PHASE_IMBALANCE = 1 /* (excited - ground) count form: twice the above */
} sd_phase_convention;

typedef enum sd_correct_set_definition {
    SD_CORRECT_NEAREST_MULTIPLE = 0,
    SD_CORRECT_CONTINUED_FRACTION = 1
} sd_correct_set_definition;

/* Pass as `residue` to average over auxiliary outcomes with Born weights. */
#define SD_AVERAGED ((int64_t)-1)

typedef struct sd_instance sd_instance;
typedef struct sd_splitting sd_splitting;
typedef struct sd_distribution sd_distribution;
typedef struct sd_table sd_table;

typedef struct sd_instance_info {
    int64_t n;
    int64_t a;
    int32_t l;
    int32_t lprime;
    int64_t q;
    int64_t r;
} sd_instance_info;

typedef struct sd_delay_schedule {
    double tau1;
    double tau2;
    double tau3;
    double tau4;
} sd_delay_schedule;

typedef struct sd_linear_fit {
    double slope;
    double intercept;
    double r_squared;
    size_t points;
} sd_linear_fit;

typedef struct sd_ensemble_spec {
    const sd_instance* instance;
    double mean_delta;
    const double* sigma_ratios; /* sigma / <Delta> as fractions */
    size_t sigma_count;
    const int32_t* orders;      /* matching orders n: <Delta> tau = 2 n pi + offset */
    size_t order_count;
    const double* offsets;      /* radians; NULL with offset_count 0 = matching point only */
    size_t offset_count;
    int64_t samples;
    uint64_t seed;
    sd_correct_set_definition correct_set;
    int64_t residue;            /* SD_AVERAGED or a fixed s */
    sd_phase_convention convention;
    uint32_t workers;           /* 0 = all cores; results do not depend on it */
} sd_ensemble_spec;

SD_API const char* sd_version(void);
SD_API const char* sd_last_error(void);

/* number theory */
SD_API sd_status sd_mod_pow(int64_t a, int64_t x, int64_t n, int64_t* out);
SD_API sd_status sd_multiplicative_order(int64_t a, int64_t n, int64_t* out);
SD_API sd_status sd_default_register_sizes(int64_t n, int32_t* l, int32_t* lprime);
/* Writes up to `capacity` values; *count receives the full length. Returns
 * SD_BUFFER_TOO_SMALL when capacity < *count. */
SD_API sd_status sd_cf_order_candidates(int64_t k, int64_t q, int64_t n, int64_t* out,
                                        size_t capacity, size_t* count);

/* l or lprime <= 0 selects the default register size. */
SD_API sd_status sd_instance_create(int64_t n, int64_t a, int32_t l, int32_t lprime,
                                    sd_instance** out);
SD_API void sd_instance_destroy(sd_instance* inst);
SD_API sd_status sd_instance_get_info(const sd_instance* inst, sd_instance_info* out);

/* splitting models */
SD_API sd_status sd_splitting_identical(double delta, sd_splitting** out);
SD_API sd_status sd_splitting_per_qubit(const double* deltas, size_t count, sd_splitting** out);
SD_API sd_status sd_splitting_gaussian(double mean, double sigma, uint64_t seed,
                                       sd_splitting** out);
SD_API void sd_splitting_destroy(sd_splitting* model);
/* Fills out[0..l) with the per-qubit splittings (sample `sample_index` for
 * Gaussian ensembles). */
SD_API sd_status sd_splitting_resolve(const sd_splitting* model, int32_t l, uint64_t sample_index,
                                      double* out);
SD_API sd_status sd_splitting_reference_delta(const sd_splitting* model, double* out);

/* phase model */
SD_API sd_status sd_state_phase(uint64_t j, const double* deltas, size_t count, double tau,
                                sd_phase_convention convention, double* out);
SD_API sd_status sd_is_phase_matched(double delta, double tau, double tol, int* out);
SD_API sd_status sd_per_qubit_phase_matched(const double* deltas, const double* taus,
                                            size_t count, double tol, int* out);

/* closed-form distribution */
SD_API sd_status sd_outcome_distribution(const sd_instance* inst, const double* deltas,
                                         size_t count, double tau, int64_t residue,
                                         sd_phase_convention convention, sd_distribution** out);
SD_API void sd_distribution_destroy(sd_distribution* dist);
SD_API size_t sd_distribution_size(const sd_distribution* dist);
SD_API const double* sd_distribution_data(const sd_distribution* dist);
SD_API sd_status sd_correct_set(const sd_instance* inst, sd_correct_set_definition definition,
                                int64_t* out, size_t capacity, size_t* count);
/* pe_per_k may be NULL; otherwise it receives `count` values. */
SD_API sd_status sd_success_probabilities(const sd_distribution* dist, const int64_t* kes,
                                          size_t count, double* pe_per_k, double* pe_total);
/* P_e evaluated only at the given outcomes, without the full vector. */
SD_API sd_status sd_success_probability(const sd_instance* inst, const double* deltas,
                                        size_t count, double tau, const int64_t* kes,
                                        size_t ke_count, int64_t residue,
                                        sd_phase_convention convention, double* pe_total);
SD_API double sd_analytic_n4(double tau, double delta);

/* state-vector oracle */
/* in/out are interleaved (re, im) arrays of 2*q doubles; q a power of two. */
SD_API sd_status sd_qft(const double* in, size_t q, double* out);
/* forced != 0 projects the auxiliary register onto a^residue mod N; otherwise
 * the outcome is Born-sampled from `seed`. work_distribution receives q values. */
SD_API sd_status sd_run_pipeline(const sd_instance* inst, const double* deltas_work,
                                 size_t work_count, const double* deltas_aux, size_t aux_count,
                                 const sd_delay_schedule* schedule, int forced, int64_t residue,
                                 uint64_t seed, sd_phase_convention convention,
                                 int64_t* s_measured, double* work_distribution,
                                 size_t capacity);

/* sweeps; results are row-major tables of doubles */
SD_API sd_status sd_default_tau_offsets(double* out, size_t capacity, size_t* count);
/* columns: n, sigma_ratio, tau_delta, pe_mean, pe_stderr */
SD_API sd_status sd_ensemble_pe(const sd_ensemble_spec* spec, sd_table** out);
/* columns: L, k_e, p_e. *fit_defined is 0 when fewer than two L values fit. */
SD_API sd_status sd_decay_with_qubits(int64_t n, int64_t a, double tau_delta, const int32_t* ls,
                                      size_t count, int64_t residue,
                                      sd_phase_convention convention, sd_table** out,
                                      sd_linear_fit* fit, int* fit_defined);
SD_API void sd_table_destroy(sd_table* table);
SD_API size_t sd_table_rows(const sd_table* table);
SD_API size_t sd_table_columns(const sd_table* table);
SD_API const char* sd_table_column_name(const sd_table* table, size_t column);
SD_API const double* sd_table_data(const sd_table* table);

#ifdef __cplusplus
}
#endif

#endif /* SHORDELAY_H_ */
