#ifndef OREINDEX_H
#define OREINDEX_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of the common index divisor test.
 */
typedef enum OreDivides {
  ORE_DIVIDES_NO = 0,
  ORE_DIVIDES_YES = 1,
  ORE_DIVIDES_UNDETERMINED = 2,
} OreDivides;

/**
 * Result codes.
 */
typedef enum OreStatus {
  ORE_STATUS_OK = 0,
  ORE_STATUS_NULL_POINTER = 1,
  ORE_STATUS_INVALID_UTF8 = 2,
  ORE_STATUS_PARSE = 3,
  ORE_STATUS_NOT_PRIME = 4,
  ORE_STATUS_INVALID_POLYNOMIAL = 5,
  ORE_STATUS_PRECONDITION = 6,
  ORE_STATUS_INTERNAL = 7,
} OreStatus;

/**
 * An integer polynomial.
 */
typedef struct OrePoly OrePoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, empty if there was none.
 * The pointer stays valid until the next failure on the same thread.
 */
const char *ore_last_error(void);

/**
 * Parse a polynomial such as `"x^5 + 3x^2 + 144"`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OreStatus ore_poly_parse(const char *src, struct OrePoly **out);

/**
 * `x^5 + a x^2 + b` from decimal strings.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
 */
enum OreStatus ore_poly_quintic(const char *a, const char *b, struct OrePoly **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from this library not yet freed.
 */
void ore_poly_free(struct OrePoly *p);

/**
 * Degree of the polynomial, or -1 for zero.
 *
 * # Safety
 * `p` must be a live handle.
 */
int64_t ore_poly_degree(const struct OrePoly *p);

/**
 * Decide whether `p` divides the common index of the field of `f`.
 * `json_out` may be null; otherwise it receives the full verdict as JSON.
 *
 * # Safety
 * `f` must be a live handle, `divides` a valid pointer and `json_out` null
 * or valid.
 */
enum OreStatus ore_index_divisor(const struct OrePoly *f,
                                 uint64_t p,
                                 enum OreDivides *divides,
                                 char **json_out);

/**
 * Ore's theorem for every factor of `f mod p`, as JSON.
 *
 * # Safety
 * `f` must be a live handle and `json_out` a valid pointer.
 */
enum OreStatus ore_analysis_json(const struct OrePoly *f, uint64_t p, char **json_out);

/**
 * The `phi`-Newton polygon of `f` at `p` as JSON, with its φ-index in
 * `index` when that is non-null.
 *
 * # Safety
 * `f` and `phi` must be live handles, `json_out` a valid pointer and
 * `index` null or valid.
 */
enum OreStatus ore_polygon_json(const struct OrePoly *f,
                                const struct OrePoly *phi,
                                uint64_t p,
                                uint64_t *index,
                                char **json_out);

/**
 * Closed-form and engine verdicts for `x^5 + a x^2 + b` as JSON.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `json_out` a valid pointer.
 */
enum OreStatus ore_quintic_json(const char *a, const char *b, char **json_out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ore_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OREINDEX_H */
