#ifndef KRONECKER_H
#define KRONECKER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KcStatus {
  KC_STATUS_OK = 0,
  KC_STATUS_NULL_POINTER = 1,
  KC_STATUS_INVALID_INPUT = 2,
  KC_STATUS_NON_DISTINCT = 3,
  KC_STATUS_RECTANGULAR = 4,
  KC_STATUS_BUDGET_EXHAUSTED = 5,
  KC_STATUS_OVERFLOW = 6,
  KC_STATUS_PANIC = 7,
} KcStatus;

/**
 * Opaque canonical 3-element set.
 */
typedef struct KcTriple KcTriple;

typedef struct KcRational {
  int64_t num;
  int64_t den;
} KcRational;

typedef struct KcBounds {
  struct KcRational trivial;
  int64_t m;
  int64_t r;
  bool rectangular;
  /**
   * When false the three fields below are zero.
   */
  bool has_closed_form;
  struct KcRational lower;
  struct KcRational e1;
  struct KcRational upper;
} KcBounds;

typedef struct KcInterval {
  struct KcRational lo;
  struct KcRational hi;
  bool has_exact;
  struct KcRational exact;
  double lo_f64;
  double hi_f64;
} KcInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Canonicalizes `{n1, n2, n3}` into a new handle.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum KcStatus kc_triple_new(int64_t n1, int64_t n2, int64_t n3, struct KcTriple **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `t` must come from [`kc_triple_new`] and not be freed twice.
 */
void kc_triple_free(struct KcTriple *t);

/**
 * Writes the canonical `(n1, n2, n3)` to `out[0..3]` and the removed common
 * factor to `scale` (which may be null).
 *
 * # Safety
 * `t` must be a live handle; `out` must be valid for three `i64` writes.
 */
enum KcStatus kc_triple_canonical(const struct KcTriple *t, int64_t *out, int64_t *scale);

/**
 * Lattice parameters `m` and `r`.
 *
 * # Safety
 * `t` must be a live handle; `m` and `r` must be valid for writing.
 */
enum KcStatus kc_triple_lattice(const struct KcTriple *t, int64_t *m, int64_t *r);

/**
 * # Safety
 * `t` must be a live handle; `out` must be valid for writing.
 */
enum KcStatus kc_triple_bounds(const struct KcTriple *t, struct KcBounds *out);

/**
 * Certified enclosure of α with width at most `tol_num / tol_den`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be valid for writing.
 */
enum KcStatus kc_alpha_certified(const struct KcTriple *t,
                                 int64_t tol_num,
                                 int64_t tol_den,
                                 struct KcInterval *out);

/**
 * Exact α.
 *
 * # Safety
 * `t` must be a live handle; `out` must be valid for writing.
 */
enum KcStatus kc_alpha_exact(const struct KcTriple *t, struct KcRational *out);

/**
 * Brute-force enclosure for a 2- or 3-element set at default grids.
 * Accepts sets with repeated absolute values such as `{-1, 1, 2}`.
 *
 * # Safety
 * `set` must point to `len` readable `i64`s; `out` must be valid for writing.
 */
enum KcStatus kc_oracle_alpha(const int64_t *set, size_t len, struct KcInterval *out);

/**
 * κ = 2 sin(π α) for α in [0, 1/2].
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum KcStatus kc_kappa_from_alpha(double alpha, double *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *kc_status_message(enum KcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KRONECKER_H */
