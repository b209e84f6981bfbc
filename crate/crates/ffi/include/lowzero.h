#ifndef LOWZERO_H
#define LOWZERO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LzStatus {
  LZ_STATUS_OK = 0,
  LZ_STATUS_NULL_POINTER = 1,
  LZ_STATUS_INVALID_ARGUMENT = 2,
  LZ_STATUS_DOMAIN = 3,
  LZ_STATUS_NO_CONVERGENCE = 4,
  LZ_STATUS_RANGE = 5,
  LZ_STATUS_EVALUATION = 6,
  LZ_STATUS_EVEN_ORDER_ZERO = 7,
  LZ_STATUS_MISMATCH = 8,
  LZ_STATUS_NOT_APPLICABLE = 9,
  LZ_STATUS_PANIC = 10,
} LzStatus;

/**
 * A number field record.
 */
typedef struct LzField LzField;

/**
 * ζ or L(s, χ_d) ready for evaluation on the critical line.
 */
typedef struct LzLFunction LzLFunction;

/**
 * A von Mangoldt table up to some x_max.
 */
typedef struct LzMangoldtTable LzMangoldtTable;

typedef struct LzTheorem2 {
  double a;
  double b;
  double bound;
} LzTheorem2;

typedef struct LzCompletedValue {
  double t;
  double lambda_value;
  double err_estimate;
  double scale;
  double normalized;
} LzCompletedValue;

typedef struct LzLowestZero {
  /**
   * 1 when a zero was found below the ceiling.
   */
  int32_t found;
  /**
   * 1 when the function vanishes at the central point.
   */
  int32_t central_zero;
  double tau;
  double bracket_width;
  double central_value;
} LzLowestZero;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; valid until the next call
 * that fails on the same thread.
 */
const char *lz_last_error_message(void);

/**
 * Library version, static storage.
 */
const char *lz_version(void);

/**
 * Parse an `x^k+c` spec.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum LzStatus lz_field_from_spec(const char *spec, struct LzField **out);

/**
 * Quadratic field of fundamental discriminant `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_field_quadratic(int64_t d, struct LzField **out);

/**
 * # Safety
 * `field` must come from this library or be NULL.
 */
void lz_field_free(struct LzField *field);

/**
 * α = ln|d| / n.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_field_alpha(const struct LzField *field, double *out);

/**
 * ln|d|.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_field_log_disc(const struct LzField *field, double *out);

/**
 * Degree and signature.
 *
 * # Safety
 * `field` must be a live handle; the out pointers must be writable.
 */
enum LzStatus lz_field_signature(const struct LzField *field,
                                 uint32_t *degree,
                                 uint32_t *r1,
                                 uint32_t *r2);

/**
 * `LZ_STATUS_NOT_APPLICABLE` when α is at or below the threshold.
 *
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_theorem1_bound(double alpha, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_theorem2_bound(double alpha, double log_disc, struct LzTheorem2 *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_remark_variant_bound(double alpha, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_neugebauer_bound(double alpha, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_lemma3_threshold(double a, double b, double c, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_central_order_bound(double log_disc, uint32_t degree, double *out);

double lz_test_function(double x);

double lz_test_function_transform(double u);

/**
 * Sieve Λ(n) for n ≤ x_max.
 *
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_mangoldt_new(uint64_t x_max, struct LzMangoldtTable **out);

/**
 * # Safety
 * `table` must come from this library or be NULL.
 */
void lz_mangoldt_free(struct LzMangoldtTable *table);

/**
 * ψ(x).
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_chebyshev_psi(const struct LzMangoldtTable *table, double x, double *out);

/**
 * Σ_{n ≤ e^T} Λ(n)/√n.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_lambda_weighted_sum(const struct LzMangoldtTable *table, double t, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_lfunction_zeta(struct LzLFunction **out);

/**
 * L(s, χ_d) for a fundamental discriminant `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_lfunction_dirichlet(int64_t d, struct LzLFunction **out);

/**
 * # Safety
 * `l` must come from this library or be NULL.
 */
void lz_lfunction_free(struct LzLFunction *l);

/**
 * Real completed value at 1/2 + it.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_lfunction_eval(const struct LzLFunction *l,
                                double t,
                                struct LzCompletedValue *out);

/**
 * Lowest positive zero below `t_max`.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_lfunction_lowest_zero(const struct LzLFunction *l,
                                       double t_max,
                                       struct LzLowestZero *out);

/**
 * τ(K) for the quadratic field of discriminant `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LzStatus lz_tau_quadratic(int64_t d, double t_max, struct LzLowestZero *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOWZERO_H */
