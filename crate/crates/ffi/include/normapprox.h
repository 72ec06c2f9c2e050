#ifndef NORMAPPROX_H
#define NORMAPPROX_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Number of coefficients `k1..k17` held by a coefficient handle.
 */
#define NA_PHI9_LEN 17

typedef enum NaStatus {
  NA_STATUS_OK = 0,
  NA_STATUS_DOMAIN = 1,
  NA_STATUS_INVALID_GRID = 2,
  NA_STATUS_UNKNOWN_ID = 3,
  NA_STATUS_NULL_POINTER = 4,
  NA_STATUS_INVALID_ARGUMENT = 5,
  NA_STATUS_NO_CONVERGENCE = 6,
  NA_STATUS_PANIC = 7,
} NaStatus;

/**
 * Coefficients for the ninth approximation.
 */
typedef struct NaPhi9Coefficients NaPhi9Coefficients;

/**
 * Result of scoring every coefficient variant.
 */
typedef struct NaReconciliation NaReconciliation;

/**
 * MXAE, its location, MAE and the number of grid points.
 */
typedef struct NaErrorSummary {
  double mxae;
  double mxae_location;
  double mae;
  size_t count;
} NaErrorSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *na_version(void);

/**
 * Static description of a status code.
 */
const char *na_status_message(enum NaStatus status);

/**
 * Reference Φ(z).
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum NaStatus na_ref_cdf(double z, double *out);

/**
 * Reference Φ⁻¹(p), `0 < p < 1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum NaStatus na_ref_quantile(double p, double *out);

/**
 * Approximation `id` (1..=9) at `z >= 0`. `coeffs` may be null, in which
 * case the default coefficients are used by approximation 9.
 *
 * # Safety
 * `coeffs` must be null or a live handle; `out` must be null or valid for
 * writes.
 */
enum NaStatus na_eval_cdf(uint32_t id,
                          double z,
                          const struct NaPhi9Coefficients *coeffs,
                          double *out);

/**
 * As [`na_eval_cdf`] but accepts any real `z` by reflection.
 *
 * # Safety
 * Same as [`na_eval_cdf`].
 */
enum NaStatus na_eval_cdf_extended(uint32_t id,
                                   double z,
                                   const struct NaPhi9Coefficients *coeffs,
                                   double *out);

/**
 * Quantile approximation `id` (1..=3) at `0.5 <= p < 1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum NaStatus na_quantile_approx(uint32_t id, double p, double *out);

/**
 * New handle holding the default coefficients. Never null.
 */
struct NaPhi9Coefficients *na_phi9_default(void);

/**
 * New handle from `len` values, which must equal `NA_PHI9_LEN`.
 *
 * # Safety
 * `k` must point to `len` readable doubles; `out` must be null or valid for
 * writes.
 */
enum NaStatus na_phi9_from_array(const double *k, size_t len, struct NaPhi9Coefficients **out);

/**
 * Copies the coefficients into `out[0..len]`; `len` must equal
 * `NA_PHI9_LEN`.
 *
 * # Safety
 * `h` must be a live handle; `out` must point to `len` writable doubles.
 */
enum NaStatus na_phi9_get(const struct NaPhi9Coefficients *h, double *out, size_t len);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void na_phi9_free(struct NaPhi9Coefficients *h);

/**
 * MXAE / MAE of approximation `id` on the grid `start..=stop` by `step`.
 *
 * # Safety
 * `coeffs` must be null or a live handle; `out` must be null or valid for
 * writes.
 */
enum NaStatus na_error_report(uint32_t id,
                              double start,
                              double stop,
                              double step,
                              const struct NaPhi9Coefficients *coeffs,
                              struct NaErrorSummary *out);

/**
 * Scores every coefficient variant of approximation 9 on the grid.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum NaStatus na_reconcile(double start, double stop, double step, struct NaReconciliation **out);

/**
 * Number of variants evaluated; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t na_reconciliation_len(const struct NaReconciliation *h);

/**
 * Index of the selected variant.
 *
 * # Safety
 * `h` must be a live handle; `out` must be null or valid for writes.
 */
enum NaStatus na_reconciliation_selected_index(const struct NaReconciliation *h, size_t *out);

/**
 * Whether the selected variant met the published MXAE and location.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
bool na_reconciliation_success(const struct NaReconciliation *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be null or valid for writes.
 */
enum NaStatus na_reconciliation_get(const struct NaReconciliation *h,
                                    size_t index,
                                    struct NaErrorSummary *out);

/**
 * Label of variant `index`, borrowed from the handle; null when out of
 * range.
 *
 * # Safety
 * `h` must be null or a live handle. The string is valid until the handle
 * is freed.
 */
const char *na_reconciliation_label(const struct NaReconciliation *h, size_t index);

/**
 * # Safety
 * `h` must be a live handle; `out` must point to `len` writable doubles.
 */
enum NaStatus na_reconciliation_coefficients(const struct NaReconciliation *h,
                                             size_t index,
                                             double *out,
                                             size_t len);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void na_reconciliation_free(struct NaReconciliation *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NORMAPPROX_H */
