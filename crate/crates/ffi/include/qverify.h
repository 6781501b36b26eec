#ifndef QVERIFY_H
#define QVERIFY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible function.
 */
typedef enum {
  QV_STATUS_OK = 0,
  QV_STATUS_NULL_POINTER = 1,
  QV_STATUS_INVALID_UTF8 = 2,
  QV_STATUS_UNKNOWN_IDENTITY = 3,
  QV_STATUS_UNKNOWN_SERIES = 4,
  QV_STATUS_ORDER_TOO_LARGE = 5,
  QV_STATUS_INVALID_ARGUMENT = 6,
  QV_STATUS_OUT_OF_RANGE = 7,
  QV_STATUS_PANIC = 8,
} QvStatus;

/**
 * Outcome of one identity check.
 */
typedef struct QvReport QvReport;

/**
 * Coefficient table of a truncated series, terms sorted by exponent vector.
 */
typedef struct QvSeries QvSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free.
 */
const char *qv_version(void);

/**
 * Copy of the last error message raised on this thread, or NULL if none.
 */
char *qv_last_error_message(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from a `qv_*` function returning `char *` and not be freed twice.
 */
void qv_string_free(char *s);

/**
 * Number of registered identities.
 */
size_t qv_identity_count(void);

/**
 * Id of the `index`-th registered identity, or NULL when out of range.
 */
char *qv_identity_id(size_t index);

/**
 * Check one identity. `order == 0` selects its default order.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
QvStatus qv_verify(const char *id, uint32_t order, bool perturb, QvReport **out);

/**
 * # Safety
 * `r` must be a live report handle.
 */
bool qv_report_passed(const QvReport *r);

/**
 * # Safety
 * `r` must be a live report handle.
 */
uint32_t qv_report_order(const QvReport *r);

/**
 * # Safety
 * `r` must be a live report handle.
 */
double qv_report_elapsed_ms(const QvReport *r);

/**
 * First mismatching monomial, e.g. `x^2*y*q^5`, or NULL when the check passed.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qv_report_witness(const QvReport *r);

/**
 * The report as a one-line JSON object.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qv_report_json(const QvReport *r);

/**
 * # Safety
 * `r` must be NULL or a report handle not yet freed.
 */
void qv_report_free(QvReport *r);

/**
 * Expand a named series (see `qverify list`) to q-order `order`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
QvStatus qv_series_by_name(const char *name, uint32_t order, QvSeries **out);

/**
 * # Safety
 * `s` must be a live series handle.
 */
size_t qv_series_len(const QvSeries *s);

/**
 * # Safety
 * `s` must be a live series handle.
 */
uint32_t qv_series_order(const QvSeries *s);

/**
 * Number of variables, and so the length of every exponent vector.
 *
 * # Safety
 * `s` must be a live series handle.
 */
size_t qv_series_arity(const QvSeries *s);

/**
 * Name of variable `index`; borrowed from the handle, do not free.
 *
 * # Safety
 * `s` must be a live series handle.
 */
const char *qv_series_var(const QvSeries *s, size_t index);

/**
 * Read term `index`: writes `arity` exponents into `exponents` and points
 * `coeff` at the decimal coefficient, which stays owned by the handle.
 *
 * # Safety
 * `s` must be a live series handle, `exponents` must have room for `cap`
 * values, and `coeff` must be a valid pointer.
 */
QvStatus qv_series_term(const QvSeries *s,
                        size_t index,
                        uint32_t *exponents,
                        size_t cap,
                        const char **coeff);

/**
 * # Safety
 * `s` must be NULL or a series handle not yet freed.
 */
void qv_series_free(QvSeries *s);

/**
 * Number of overpartitions of `n` in a named set (`A`, `A-no-1bar`, ..., `Avee`).
 *
 * # Safety
 * `set` must be a NUL-terminated string and `out` a valid pointer.
 */
QvStatus qv_count_set(const char *set, uint32_t n, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QVERIFY_H */
