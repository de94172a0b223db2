/* Copyright 2026 The thetazero Authors.
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

#ifndef THETAZERO_THETAZERO_C_H_
#define THETAZERO_THETAZERO_C_H_

/* C interface to thetazero.
 *
 * Every function returns a tz_status. On failure the message is available
 * through tz_last_error() on the calling thread until the next call.
 * Strings returned through char** are owned by the caller and released with
 * tz_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tz_status {
  TZ_OK = 0,
  TZ_INVALID_ARGUMENT = 1,
  TZ_SIZE_BOUND = 2,
  TZ_NOT_TRANSVERSE = 3,
  TZ_NOT_SATURATED = 4,
  TZ_NOT_LAGRANGIAN = 5,
  TZ_PARSE = 6,
  TZ_INVARIANT_VIOLATED = 7,
  TZ_OVERFLOW = 8,
  TZ_INTERNAL = 99
} tz_status;

typedef struct tz_field tz_field;
typedef struct tz_instance tz_instance;

const char* tz_version(void);
const char* tz_last_error(void);
void tz_string_free(char* s);

/* q must be an odd prime power. */
tz_status tz_field_new(int q, tz_field** out);
void tz_field_free(tz_field* f);
int tz_field_q(const tz_field* f);

/* Parses and validates an instance document; *bound receives its
 * enumeration bound (may be NULL). */
tz_status tz_instance_from_json(const char* text, tz_instance** out,
                                double* bound);
/* Random transverse instance of ranks m <= n <= 2 with every space of the
 * pipeline at most `bound` elements. */
tz_status tz_instance_random(const tz_field* f, uint64_t seed, int m, int n,
                             double bound, tz_instance** out);
tz_status tz_instance_to_json(const tz_instance* inst, double bound, char** out);
tz_status tz_instance_hash(const tz_instance* inst, uint64_t* out);
/* Largest space the check will enumerate, before anything is enumerated. */
tz_status tz_instance_size_estimate(const tz_instance* inst, double* out);
void tz_instance_free(tz_instance* inst);

/* Runs the modularity check with psi_c, c = psi_scale (an element index of
 * F_q, nonzero). *equal is 1 when Z1 = Z2 and every replayed step holds.
 * csv_index >= 0 selects a CSV row instead of the JSON report. */
tz_status tz_modularity(const tz_instance* inst, int psi_scale, double bound,
                        int timings, int csv_index, char** report, int* equal);
tz_status tz_modularity_csv_header(char** out);

/* q_list of length nq; format 0 = CSV, 1 = JSON. */
tz_status tz_gauss_table(const int* q_list, int nq, int dim_max, int format,
                         char** out);
/* format 0 = text, 1 = JSON. *all_pass is 1 when every identity held. */
tz_status tz_fourier_selftest(int q, int psi_scale, int r_max, int trials,
                              uint64_t seed, int format, char** out,
                              int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* THETAZERO_THETAZERO_C_H_ */
