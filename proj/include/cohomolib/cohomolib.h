/* SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef COHOMOLIB_H
#define COHOMOLIB_H

#include <stddef.h>
#include <stdint.h>

#if defined(CHL_BUILDING_LIBRARY)
#define CHL_API __attribute__((visibility("default")))
#else
#define CHL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; values match the library's error codes. */
typedef enum chl_status {
    CHL_OK = 0,
    CHL_INVALID_ARGUMENT = 1,
    CHL_PRECISION_EXHAUSTED,
    CHL_RATIONAL_INPUT,
    CHL_INVALID_QUOTIENT,
    CHL_INDEX_OUT_OF_RANGE,
    CHL_LENGTH_MISMATCH,
    CHL_NONPOSITIVE_DERIVATIVE,
    CHL_NOT_A_DIFFEOMORPHISM,
    CHL_NEWTON_DIVERGENCE,
    CHL_PERIODIC_ORBIT_DETECTED,
    CHL_MAX_ITER_EXCEEDED,
    CHL_TARGET_IN_PLATEAU,
    CHL_BUDGET_EXCEEDED,
    CHL_RATIONAL_ROTATION,
    CHL_PARTITION_VIOLATION,
    CHL_DERIVATIVE_UNAVAILABLE,
    CHL_ORDER_UNAVAILABLE,
    CHL_BOUND_VIOLATED,
    CHL_DEGENERATE_BETAS,
    CHL_DIVISOR_UNDERFLOW,
    CHL_NOT_LIOUVILLE_ENOUGH,
    CHL_NOT_COMMUTING,
    CHL_NOT_UNIMODULAR,
    CHL_NON_PERIODIC_CONJUGATOR,
    CHL_FIXED_POINT_IN_WINDOW,
    CHL_DEGENERATE_INTERVAL,
    CHL_PERIODICITY_VIOLATED,
    CHL_NO_QUALIFYING_LEVEL,
    CHL_CERTIFICATE_FAILED,
    CHL_RESIDUAL_TOO_LARGE,
    CHL_CONFIG_PARSE,
    CHL_INTERNAL
} chl_status;

typedef struct chl_cf chl_cf;         /* continued fraction */
typedef struct chl_map chl_map;       /* circle diffeomorphism with its rotation data */
typedef struct chl_result chl_result; /* outcome of one experiment */

CHL_API const char* chl_version(void);
CHL_API const char* chl_status_name(chl_status status);
/* Message of the last failure on the calling thread. */
CHL_API const char* chl_last_error(void);

/* Continued fractions: spec as accepted by the CLI ("golden", "p/q", "[0,1,2]", ...). */
CHL_API chl_status chl_cf_create(const char* spec, int depth, unsigned bits, chl_cf** out);
CHL_API void chl_cf_destroy(chl_cf* cf);
CHL_API int chl_cf_depth(const chl_cf* cf);
CHL_API int chl_cf_usable_depth(const chl_cf* cf);
/* Decimal strings; buf receives at most len bytes including the terminator. */
CHL_API chl_status chl_cf_quotient(const chl_cf* cf, int n, char* buf, size_t len);
CHL_API chl_status chl_cf_convergent(const chl_cf* cf, int n, char* p, size_t plen, char* q, size_t qlen);
CHL_API chl_status chl_cf_beta(const chl_cf* cf, int n, double* out);
CHL_API double chl_cf_alpha(const chl_cf* cf);

/* Maps: "rotation:rho=golden", "arnold:eps=0.5,rho=golden", "arnold:a=0.4,eps=0.9", ... */
CHL_API chl_status chl_map_create(const char* spec, size_t grid, int64_t tune_budget, chl_map** out);
CHL_API void chl_map_destroy(chl_map* map);
CHL_API chl_status chl_map_eval(const chl_map* map, double x, double* y);
CHL_API chl_status chl_map_inverse(const chl_map* map, double y, double* x);
CHL_API chl_status chl_map_rotation_number(const chl_map* map, double* rho);
/* Rotation data as a new continued fraction handle. */
CHL_API chl_status chl_map_cf(const chl_map* map, chl_cf** out);

/* Experiments: config is a JSON object {"command": ..., ...}. On CHL_OK the
 * result is set even when the experiment's checks failed; inspect its exit code. */
CHL_API chl_status chl_run(const char* config_json, chl_result** out);
CHL_API int chl_result_exit_code(const chl_result* r);
CHL_API const char* chl_result_json(const chl_result* r);
CHL_API const char* chl_result_csv(const chl_result* r);
CHL_API void chl_result_destroy(chl_result* r);

/* Newline-separated command names, or the keys accepted by one command. */
CHL_API const char* chl_commands(void);
CHL_API const char* chl_command_keys(const char* command);

#ifdef __cplusplus
}
#endif

#endif /* COHOMOLIB_H */
