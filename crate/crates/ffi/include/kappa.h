#ifndef KAPPA_H
#define KAPPA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum KappaStatus {
  KAPPA_STATUS_OK = 0,
  /**
   * An argument violated a documented precondition.
   */
  KAPPA_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The requested valuation is infinite (the valuated quantity is zero).
   */
  KAPPA_STATUS_INFINITE_VALUATION = 2,
  KAPPA_STATUS_NULL_POINTER = 3,
  /**
   * An internal consistency check failed; this is a library bug.
   */
  KAPPA_STATUS_INTERNAL_ERROR = 4,
} KappaStatus;

/**
 * Opaque divisor report handle.
 */
typedef struct KappaDivisorReport KappaDivisorReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *kappa_version(void);

/**
 * Frees a string allocated by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must have been returned by a `kappa_*` function and not freed before.
 */
void kappa_string_free(char *s);

/**
 * Writes the decimal value of the divisor D_i. i >= 1.
 *
 * # Safety
 * `out` must be valid for a single pointer write.
 */
enum KappaStatus kappa_divisor_value(uint64_t i, char **out);

/**
 * Writes the full divisor report as a JSON object. i >= 1.
 *
 * # Safety
 * `out` must be valid for a single pointer write.
 */
enum KappaStatus kappa_divisor_report_json(uint64_t i, char **out);

/**
 * Builds a divisor report for index i >= 1; free with
 * [`kappa_divisor_report_free`].
 *
 * # Safety
 * `out` must be valid for a single pointer write.
 */
enum KappaStatus kappa_divisor_report_new(uint64_t i, struct KappaDivisorReport **out);

/**
 * # Safety
 * `report` must come from [`kappa_divisor_report_new`] and not be freed twice.
 */
void kappa_divisor_report_free(struct KappaDivisorReport *report);

/**
 * The index the report was built for; 0 on NULL input.
 *
 * # Safety
 * `report` must be a live handle from [`kappa_divisor_report_new`] or NULL.
 */
uint64_t kappa_divisor_report_index(const struct KappaDivisorReport *report);

/**
 * Writes the decimal lower bound of the report.
 *
 * # Safety
 * `report` must be a live handle or NULL; `out` must be valid for a single
 * pointer write.
 */
enum KappaStatus kappa_divisor_report_lower(const struct KappaDivisorReport *report, char **out);

/**
 * Writes the decimal upper bound of the report.
 *
 * # Safety
 * `report` must be a live handle or NULL; `out` must be valid for a single
 * pointer write.
 */
enum KappaStatus kappa_divisor_report_upper(const struct KappaDivisorReport *report, char **out);

/**
 * Writes the standard Bernoulli number B_n as "num/den" (lowest terms).
 *
 * # Safety
 * `out` must be valid for a single pointer write.
 */
enum KappaStatus kappa_bernoulli_std(uint32_t n, char **out);

/**
 * Writes den(B_i/2i) in decimal. 1 <= i <= 250.
 *
 * # Safety
 * `out` must be valid for a single pointer write.
 */
enum KappaStatus kappa_den_b_over_2i(uint64_t i, char **out);

/**
 * Whether kappa_i vanishes in mod-p cohomology. p must be prime, i >= 1.
 *
 * # Safety
 * `out` must be valid for a single bool write.
 */
enum KappaStatus kappa_akita_vanishes(uint64_t p, uint64_t i, bool *out);

/**
 * The same vanishing decided through the Wu-class series.
 *
 * # Safety
 * `out` must be valid for a single bool write.
 */
enum KappaStatus kappa_wu_vanishing(uint64_t p, uint64_t i, bool *out);

/**
 * nu_p(1 - (-k)^s) computed exactly. Returns `InfiniteValuation` for the
 * degenerate zero (k = 1, s even).
 *
 * # Safety
 * `out` must be valid for a single i64 write.
 */
enum KappaStatus kappa_adams_valuation_direct(uint64_t p, uint64_t k, uint64_t s, int64_t *out);

/**
 * Writes the spectral-sequence report as JSON. 5 <= cap <= 8.
 *
 * # Safety
 * `out` must be valid for a single pointer write.
 */
enum KappaStatus kappa_bss_report_json(uint32_t cap, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KAPPA_H */
