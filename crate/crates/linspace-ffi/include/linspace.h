/* C interface to the linspace library. See README.md for usage. */

#ifndef LINSPACE_H
#define LINSPACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible ABI call.
 */
typedef enum LsStatus {
  /**
   * Success.
   */
  LS_OK = 0,
  /**
   * The input is not a valid linear space (or not parseable).
   */
  LS_INVALID_INPUT = 1,
  /**
   * A theorem-level invariant failed; this indicates a library bug.
   */
  LS_THEOREM_VIOLATION = 2,
  /**
   * A required pointer argument was NULL.
   */
  LS_NULL_POINTER = 3,
  /**
   * An input string was not valid UTF-8.
   */
  LS_INVALID_UTF8 = 4,
  /**
   * A panic was caught at the boundary.
   */
  LS_PANIC = 5,
} LsStatus;

/**
 * Opaque handle to a validated linear space.
 */
typedef struct LsSpace LsSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next ABI call on the same thread; never free it.
 */
const char *ls_last_error(void);

/**
 * Parse an instance (JSON or plain text, auto-detected), validate the
 * linear-space axioms, and hand back an owned handle in `*out`.
 *
 * # Safety
 * `input` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum LsStatus ls_parse(const char *input, struct LsSpace **out);

/**
 * Destroy a handle returned by [`ls_parse`]. NULL is a no-op.
 *
 * # Safety
 * `space` must be NULL or a pointer returned by [`ls_parse`] that has not
 * been freed already.
 */
void ls_free(struct LsSpace *space);

/**
 * Number of points, or 0 if `space` is NULL (a valid space has >= 3).
 *
 * # Safety
 * `space` must be NULL or a live handle.
 */
uintptr_t ls_point_count(const struct LsSpace *space);

/**
 * Number of lines, or 0 if `space` is NULL (a valid space has >= 3).
 *
 * # Safety
 * `space` must be NULL or a live handle.
 */
uintptr_t ls_line_count(const struct LsSpace *space);

/**
 * Release a string returned by a report function. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library that has not been
 * freed already.
 */
void ls_string_free(char *s);

/**
 * Axiom check plus degree/size profile.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
enum LsStatus ls_validate_json(const struct LsSpace *space, char **out);

/**
 * Double count, inequality table, Hall/SDR, proof trace, cyclic certificate.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
enum LsStatus ls_certify_json(const struct LsSpace *space, char **out);

/**
 * Near-pencil / projective-plane taxonomy for the m = n case.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
enum LsStatus ls_classify_json(const struct LsSpace *space, char **out);

/**
 * Exact Gram-matrix report (lambda = 1): determinant by two independent
 * routes, rank, positive definiteness.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
enum LsStatus ls_gram_json(const struct LsSpace *space, char **out);

/**
 * Gram report for a lambda-design given directly as an instance string
 * (JSON or plain text); `lambda >= 1`. For `lambda >= 2` the input is
 * validated against the lambda-design axioms, not the linear-space axioms,
 * so no handle is involved.
 *
 * # Safety
 * `input` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum LsStatus ls_design_gram_json(const char *input, uintptr_t lambda, char **out);

/**
 * Pencil quantities around a longest line, per-point lemma, pencil bounds.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
enum LsStatus ls_hanani_json(const struct LsSpace *space, char **out);

/**
 * Weighted-sum verifier over exact rationals. `variant`: 0 = ratio,
 * 1 = shifted; anything else is invalid input.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
enum LsStatus ls_bkc_json(const struct LsSpace *space, uint32_t variant, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINSPACE_H */
