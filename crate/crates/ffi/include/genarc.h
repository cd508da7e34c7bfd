#ifndef GENARC_H
#define GENARC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

enum GenarcKind
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  GENARC_KIND_ARC = 0,
  GENARC_KIND_VERONESIAN = 1,
  GENARC_KIND_GENERALIZED = 2,
};
#ifndef __cplusplus
typedef uint32_t GenarcKind;
#endif // __cplusplus

enum GenarcMode
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  GENARC_MODE_MIN_COMPLETE = 0,
  GENARC_MODE_MAX = 1,
};
#ifndef __cplusplus
typedef uint32_t GenarcMode;
#endif // __cplusplus

typedef enum GenarcStatus {
  GENARC_STATUS_OK = 0,
  GENARC_STATUS_NULL_POINTER = 1,
  GENARC_STATUS_INVALID_ARGUMENT = 2,
  GENARC_STATUS_NOT_PRIME_POWER = 3,
  GENARC_STATUS_TOO_LARGE = 4,
  GENARC_STATUS_PARSE = 5,
  GENARC_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * The search stopped on its node budget; the outcome holds what was found.
   */
  GENARC_STATUS_BUDGET_EXHAUSTED = 7,
  GENARC_STATUS_PANIC = 100,
} GenarcStatus;

/**
 * A finite field GF(p^r).
 */
typedef struct GenarcField GenarcField;

/**
 * The projective plane PG(2,q).
 */
typedef struct GenarcPlane GenarcPlane;

/**
 * Closed-form lower bounds for one q. Entries that do not apply are 0.
 */
typedef struct GenarcBounds {
  uint32_t ball_sqrt2;
  uint32_t ball_sqrt3;
  uint32_t t_prop;
  uint32_t ceil_t0;
  uint32_t ceil_t1;
  uint32_t ceil_t2;
} GenarcBounds;

typedef struct GenarcSearchOutcome {
  /**
   * 0 when no answer was found.
   */
  uint32_t answer;
  bool exhaustive;
  uint64_t nodes;
} GenarcSearchOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code; unknown codes get
 * a generic message.
 */
const char *genarc_status_message(int32_t status);

/**
 * Creates GF(p^r). `modulus` holds r+1 coefficients, constant term first,
 * or is NULL for the default modulus.
 *
 * # Safety
 * `modulus` must point to `modulus_len` readable values when non-NULL and
 * `out` must be writable.
 */
enum GenarcStatus genarc_field_new(uint32_t p,
                                   uint32_t r,
                                   const uint32_t *modulus,
                                   size_t modulus_len,
                                   struct GenarcField **out);

/**
 * Creates the field of order q with the default modulus.
 *
 * # Safety
 * `out` must be writable.
 */
enum GenarcStatus genarc_field_of_order(uint32_t q, struct GenarcField **out);

/**
 * # Safety
 * `field` must come from `genarc_field_new` or `genarc_field_of_order` and
 * not be used afterwards. NULL is ignored.
 */
void genarc_field_free(struct GenarcField *field);

/**
 * # Safety
 * `field` must be a live handle; returns 0 for NULL.
 */
uint32_t genarc_field_order(const struct GenarcField *field);

/**
 * Canonical encoding of the primitive element.
 *
 * # Safety
 * `field` must be a live handle; returns 0 for NULL.
 */
uint32_t genarc_field_alpha(const struct GenarcField *field);

/**
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum GenarcStatus genarc_field_add(const struct GenarcField *field,
                                   uint32_t a,
                                   uint32_t b,
                                   uint32_t *out);

/**
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum GenarcStatus genarc_field_mul(const struct GenarcField *field,
                                   uint32_t a,
                                   uint32_t b,
                                   uint32_t *out);

/**
 * Computes a / b; dividing by zero is `InvalidArgument`.
 *
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum GenarcStatus genarc_field_div(const struct GenarcField *field,
                                   uint32_t a,
                                   uint32_t b,
                                   uint32_t *out);

/**
 * Builds PG(2,q) over a copy of `field`; the field handle stays owned by
 * the caller.
 *
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum GenarcStatus genarc_plane_new(const struct GenarcField *field, struct GenarcPlane **out);

/**
 * # Safety
 * `plane` must come from `genarc_plane_new` and not be used afterwards.
 * NULL is ignored.
 */
void genarc_plane_free(struct GenarcPlane *plane);

/**
 * Number of points, q^2+q+1; 0 for NULL.
 *
 * # Safety
 * `plane` must be a live handle or NULL.
 */
uint32_t genarc_plane_size(const struct GenarcPlane *plane);

/**
 * Parses "[a:b:c]" into a point index.
 *
 * # Safety
 * `text` must be a NUL-terminated string, `plane` a live handle and `out`
 * writable.
 */
enum GenarcStatus genarc_plane_parse_point(const struct GenarcPlane *plane,
                                           const char *text,
                                           uint32_t *out);

/**
 * Writes the canonical "[a:b:c]" text of a point, NUL-terminated. The
 * needed length without the NUL is stored in `out_len` even when the buffer
 * is too small.
 *
 * # Safety
 * `buf` must have `cap` writable bytes (it may be NULL when `cap` is 0),
 * `plane` must be a live handle and `out_len` writable.
 */
enum GenarcStatus genarc_plane_format_point(const struct GenarcPlane *plane,
                                            uint32_t index,
                                            char *buf,
                                            size_t cap,
                                            size_t *out_len);

/**
 * Index of the line through two distinct points.
 *
 * # Safety
 * `plane` must be a live handle and `out` writable.
 */
enum GenarcStatus genarc_plane_join(const struct GenarcPlane *plane,
                                    uint32_t a,
                                    uint32_t b,
                                    uint32_t *out);

/**
 * Whether the points form a valid set of `kind` (a `GenarcKind` value).
 *
 * # Safety
 * `points` must hold `len` readable indices, `plane` must be a live handle
 * and `out` writable.
 */
enum GenarcStatus genarc_arc_is_valid(const struct GenarcPlane *plane,
                                      const uint32_t *points,
                                      size_t len,
                                      uint32_t kind,
                                      bool *out);

/**
 * Whether a valid set of `kind` is complete. An invalid set gives
 * `InvalidArgument`.
 *
 * # Safety
 * As for `genarc_arc_is_valid`.
 */
enum GenarcStatus genarc_arc_is_complete(const struct GenarcPlane *plane,
                                         const uint32_t *points,
                                         size_t len,
                                         uint32_t kind,
                                         bool *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum GenarcStatus genarc_bounds(uint32_t q, struct GenarcBounds *out);

/**
 * Runs a frame-fixed search. `node_budget` and `time_budget_ms` of 0 mean
 * unlimited. On `BudgetExhausted` the outcome is still written.
 *
 * # Safety
 * `out` must be writable.
 */
enum GenarcStatus genarc_search(uint32_t q,
                                uint32_t kind,
                                uint32_t mode,
                                uint32_t workers,
                                uint64_t node_budget,
                                uint64_t time_budget_ms,
                                struct GenarcSearchOutcome *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENARC_H */
