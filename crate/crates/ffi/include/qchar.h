#ifndef QCHAR_H
#define QCHAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcharMode {
  QCHAR_MODE_PLAIN = 0,
  QCHAR_MODE_MODIFIED = 1,
} QcharMode;

typedef enum QcharStatus {
  QCHAR_STATUS_OK = 0,
  QCHAR_STATUS_NULL_ARGUMENT = 1,
  QCHAR_STATUS_INVALID_UTF8 = 2,
  QCHAR_STATUS_PARSE_ERROR = 3,
  QCHAR_STATUS_INVALID_INPUT = 4,
  QCHAR_STATUS_FM_FAILED = 5,
  QCHAR_STATUS_AMBIGUOUS = 6,
  QCHAR_STATUS_LIMIT_EXCEEDED = 7,
  QCHAR_STATUS_INTERNAL = 8,
  QCHAR_STATUS_PANIC = 9,
} QcharStatus;

/**
 * A validated algebra such as `C3`.
 */
typedef struct QcharAlgebra QcharAlgebra;

/**
 * Outcome of one run together with its JSON report.
 */
typedef struct QcharResult QcharResult;

typedef struct QcharLimits {
  uint64_t max_height;
  uint64_t max_terms;
  uint64_t max_injections;
} QcharLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct QcharLimits qchar_limits_default(void);

/**
 * Parses an algebra name such as `"C3"` into `*out`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QcharStatus qchar_algebra_new(const char *name, struct QcharAlgebra **out);

/**
 * # Safety
 * `algebra` must be null or a handle from `qchar_algebra_new` not yet freed.
 */
void qchar_algebra_free(struct QcharAlgebra *algebra);

/**
 * Rank of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a live handle.
 */
size_t qchar_algebra_rank(const struct QcharAlgebra *algebra);

/**
 * Runs the algorithm from `highest`. A result handle is stored in `*out`
 * whenever a report was produced, including failed, ambiguous and
 * limit-exceeded runs; the return value is the run's status. `limits` may
 * be null for the defaults.
 *
 * # Safety
 * `algebra` must be a live handle, `highest` a NUL-terminated string,
 * `limits` null or valid, and `out` a valid pointer.
 */
enum QcharStatus qchar_run(const struct QcharAlgebra *algebra,
                           const char *highest,
                           enum QcharMode mode,
                           const struct QcharLimits *limits,
                           struct QcharResult **out);

/**
 * # Safety
 * `result` must be a live handle.
 */
enum QcharStatus qchar_result_status(const struct QcharResult *result);

/**
 * Sum of coefficients; 0 if the run did not complete.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t qchar_result_total(const struct QcharResult *result);

/**
 * Number of distinct monomials; 0 if the run did not complete.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t qchar_result_term_count(const struct QcharResult *result);

/**
 * The JSON report, borrowed from the handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
const char *qchar_result_json(const struct QcharResult *result);

/**
 * # Safety
 * `result` must be null or a handle from `qchar_run` not yet freed.
 */
void qchar_result_free(struct QcharResult *result);

/**
 * Message for the last error on this thread, or null.
 */
const char *qchar_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCHAR_H */
