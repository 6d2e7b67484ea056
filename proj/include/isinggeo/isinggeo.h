/* Copyright 2026 The isinggeo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the isinggeo library.
 *
 * Every function returns an ig_status. On failure, ig_last_error() describes
 * the error for the calling thread. Strings returned through char** are owned
 * by the caller and released with ig_string_free. Times are in units of
 * 1/(pi J), control amplitudes in units of pi J.
 */

#ifndef ISINGGEO_ISINGGEO_H_
#define ISINGGEO_ISINGGEO_H_

#include <stddef.h>

#if defined(ISINGGEO_BUILDING_LIBRARY)
#define IG_API __attribute__((visibility("default")))
#else
#define IG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ig_status {
  IG_OK = 0,
  IG_ERR_NULL_ARGUMENT = 1,
  IG_ERR_INVALID_ARGUMENT = 2,
  IG_ERR_PARSE = 3,
  IG_ERR_NUMERIC = 4,
  IG_ERR_NO_ROOT = 5,
  IG_ERR_OUT_OF_RANGE = 6,
  IG_ERR_INTERNAL = 99
} ig_status;

typedef struct ig_geodesic ig_geodesic;
typedef struct ig_sequence ig_sequence;
typedef struct ig_result ig_result;

typedef struct ig_solver_options {
  double dt;       /* integration step; <= 0 selects the default 1e-4 */
  int has_bracket; /* nonzero: search f in [f_lo, f_hi] */
  double f_lo;
  double f_hi;
} ig_solver_options;

typedef struct ig_sim_options {
  int slice_refinement; /* <= 0 selects 1 */
  double report_dt;     /* 0 disables the expectation profile */
  const char* basis;    /* ';'-separated operators; NULL = cascade coordinates */
  int decompose;        /* nonzero: expand the final operator (n <= 8) */
} ig_sim_options;

IG_API const char* ig_version(void);
IG_API const char* ig_last_error(void);
IG_API const char* ig_status_name(ig_status status);
IG_API void ig_string_free(char* s);

/* Geodesics. step is "first", "intermediate" or "last". */
IG_API ig_status ig_geodesic_solve(const char* step, const ig_solver_options* options, ig_geodesic** out);
IG_API void ig_geodesic_free(ig_geodesic* g);
IG_API ig_status ig_geodesic_f(const ig_geodesic* g, double* out);
IG_API ig_status ig_geodesic_tau(const ig_geodesic* g, double* out);
IG_API ig_status ig_geodesic_miss(const ig_geodesic* g, double* out);
IG_API ig_status ig_geodesic_to_json(const ig_geodesic* g, double j_hz, char** out);
/* Pulse resampled onto `samples` points. near_constant may be NULL. */
IG_API ig_status ig_geodesic_export_pulse(const ig_geodesic* g, size_t samples, int* near_constant,
                                          char** json_out, char** csv_out);
/* Euclidean miss of the exported pulse replayed through the 4-state block. */
IG_API ig_status ig_geodesic_replay_miss(const ig_geodesic* g, size_t samples, double* out);

/* Sequences. kind is one of conventional, geodesic-order, inept, inept-step,
 * lambda-prep, lambda-step, lambda-collapse, lambda-transfer, pair-encoding,
 * pair-step. k is the step index for the *-step kinds and ignored otherwise.
 */
IG_API ig_status ig_sequence_build(const char* kind, int n, int k, double j_hz, const ig_solver_options* options,
                                   ig_sequence** out);
IG_API ig_status ig_sequence_from_json(const char* json, ig_sequence** out);
IG_API void ig_sequence_free(ig_sequence* s);
IG_API ig_status ig_sequence_to_json(const ig_sequence* s, char** out);
IG_API ig_status ig_sequence_duration(const ig_sequence* s, double* out);
IG_API ig_status ig_sequence_transfer_count(const ig_sequence* s, int* out);

/* Simulation of every annotated transfer of the sequence. */
IG_API ig_status ig_simulate(const ig_sequence* s, const ig_sim_options* options, ig_result** out);
/* Simulation of one explicit transfer. */
IG_API ig_status ig_simulate_operator(const ig_sequence* s, const char* initial, const char* target,
                                      const ig_sim_options* options, ig_result** out);
IG_API void ig_result_free(ig_result* r);
IG_API ig_status ig_result_transfer_count(const ig_result* r, int* out);
IG_API ig_status ig_result_fidelity(const ig_result* r, int index, double* out);
IG_API ig_status ig_result_norm_drift(const ig_result* r, double* out);
IG_API ig_status ig_result_to_json(const ig_result* r, char** out);
/* Expectation profile of the first transfer. */
IG_API ig_status ig_result_profile_csv(const ig_result* r, char** out);

/* Reports. format is "json", "csv" or "table". */
IG_API ig_status ig_compare(int n_min, int n_max, double j_hz, int simulate, const ig_solver_options* options,
                            const char* format, char** out);
IG_API ig_status ig_verify(const char* format, int* all_passed, char** out);

/* Operators. */
IG_API ig_status ig_operator_normalize(const char* text, char** out);
IG_API ig_status ig_operator_inner(const char* a, const char* b, int n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* ISINGGEO_ISINGGEO_H_ */
