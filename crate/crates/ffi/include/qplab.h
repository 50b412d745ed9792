#ifndef QPLAB_H
#define QPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  QPLAB_STATUS_OK = 0,
  QPLAB_STATUS_NULL_POINTER = 1,
  QPLAB_STATUS_INVALID_UTF8 = 2,
  QPLAB_STATUS_PARSE = 3,
  QPLAB_STATUS_ARITHMETIC = 4,
  QPLAB_STATUS_INVALID_ARGUMENT = 5,
  QPLAB_STATUS_PANIC = 6,
} QplabStatus;

/**
 * Outcome of a verification.
 */
typedef enum {
  QPLAB_VERDICT_PASS = 0,
  QPLAB_VERDICT_FAIL = 1,
  QPLAB_VERDICT_ERROR = 2,
} QplabVerdict;

/**
 * A Laurent polynomial over `q, t, z, a, b, c, d, x, y` with integer coefficients.
 */
typedef struct QplabPoly QplabPoly;

/**
 * The report of one identity verification.
 */
typedef struct QplabReport QplabReport;

/**
 * Partition constraints; a negative bound means unbounded.
 */
typedef struct {
  int64_t max_part;
  int64_t max_parts;
  int64_t fixed_norm;
  int64_t max_norm;
  bool distinct;
} QplabConstraints;

/**
 * Pass, fail and error counts of a suite run.
 */
typedef struct {
  size_t pass;
  size_t fail;
  size_t error;
} QplabSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qplab_version(void);

/**
 * Message for the most recent failed call on this thread, or null after a
 * successful call. Valid until the next call into the library on this thread.
 */
const char *qplab_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void qplab_string_free(char *s);

/**
 * Parses text such as `"q^2 - 3*a*b^-1 + 1"`.
 *
 * # Safety
 * `src` is a NUL-terminated string; `out` is writable.
 */
QplabStatus qplab_poly_parse(const char *src, QplabPoly **out);

/**
 * Gaussian binomial `[k; n]` in `q`; zero unless `k >= n >= 0`.
 *
 * # Safety
 * `out` is writable.
 */
QplabStatus qplab_poly_gaussian_binomial(int64_t k, int64_t n, QplabPoly **out);

/**
 * `*out = a + b`.
 *
 * # Safety
 * `a`, `b` are live handles; `out` is writable.
 */
QplabStatus qplab_poly_add(const QplabPoly *a, const QplabPoly *b, QplabPoly **out);

/**
 * `*out = a - b`.
 *
 * # Safety
 * `a`, `b` are live handles; `out` is writable.
 */
QplabStatus qplab_poly_sub(const QplabPoly *a, const QplabPoly *b, QplabPoly **out);

/**
 * `*out = a * b`.
 *
 * # Safety
 * `a`, `b` are live handles; `out` is writable.
 */
QplabStatus qplab_poly_mul(const QplabPoly *a, const QplabPoly *b, QplabPoly **out);

/**
 * `*out = num / den` when the division is exact; `QPLAB_STATUS_ARITHMETIC` otherwise.
 *
 * # Safety
 * `num`, `den` are live handles; `out` is writable.
 */
QplabStatus qplab_poly_divide_exact(const QplabPoly *num, const QplabPoly *den, QplabPoly **out);

/**
 * `*out = (a == b)`.
 *
 * # Safety
 * `a`, `b` are live handles; `out` is writable.
 */
QplabStatus qplab_poly_equal(const QplabPoly *a, const QplabPoly *b, bool *out);

/**
 * Canonical text form; release with `qplab_string_free`.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
QplabStatus qplab_poly_to_string(const QplabPoly *p, char **out);

/**
 * Releases a polynomial. Null is ignored.
 *
 * # Safety
 * `p` is null or a handle from this library not yet freed.
 */
void qplab_poly_free(QplabPoly *p);

/**
 * Number of partitions satisfying `c`; infinite sets are rejected.
 *
 * # Safety
 * `c` points to a valid struct; `out` is writable.
 */
QplabStatus qplab_count_partitions(const QplabConstraints *c, uint64_t *out);

/**
 * Verifies one identity instance. `params` is `"name=value,..."` or null;
 * `mode` is `exact`, `truncated:C`, `rational:N:SEED` or null for the
 * identity's default. Unknown ids and bad parameters still produce a report
 * whose verdict is `QPLAB_VERDICT_ERROR`.
 *
 * # Safety
 * `id` is a NUL-terminated string; `params` and `mode` are null or
 * NUL-terminated strings; `out` is writable.
 */
QplabStatus qplab_verify(const char *id, const char *params, const char *mode, QplabReport **out);

/**
 * Verdict of a report.
 *
 * # Safety
 * `r` is a live handle; `out` is writable.
 */
QplabStatus qplab_report_verdict(const QplabReport *r, QplabVerdict *out);

/**
 * The report as JSON; release with `qplab_string_free`.
 *
 * # Safety
 * `r` is a live handle; `out` is writable.
 */
QplabStatus qplab_report_to_json(const QplabReport *r, char **out);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `r` is null or a handle from this library not yet freed.
 */
void qplab_report_free(QplabReport *r);

/**
 * Runs the suite `smoke`, `default` or `full` on `jobs` threads (0 for all cores).
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is writable.
 */
QplabStatus qplab_run_suite(const char *name, size_t jobs, QplabSummary *out);

/**
 * Reproduces `table2`, `table6`, `table7` or `table8` as JSON; `*reproduced`
 * tells whether every list and polynomial agreed.
 *
 * # Safety
 * `name` is a NUL-terminated string; `json` and `reproduced` are writable.
 */
QplabStatus qplab_table_json(const char *name, char **json, bool *reproduced);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPLAB_H */
