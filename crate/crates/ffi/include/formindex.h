#ifndef FORMINDEX_H
#define FORMINDEX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum FxStatus {
  FxStatus_Ok = 0,
  /**
   * Malformed input, validation failure, or null argument.
   */
  FxStatus_Invalid = 1,
  /**
   * Standard-basis resource budget exceeded.
   */
  FxStatus_Budget = 2,
  /**
   * Pipeline and oracle colengths disagree.
   */
  FxStatus_OracleDisagreement = 3,
} FxStatus;

/**
 * Opaque parsed problem.
 */
typedef struct FxProblem FxProblem;

/**
 * Opaque computation result.
 */
typedef struct FxResult FxResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or null. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *fx_last_error_message(void);

/**
 * Parses a problem from its JSON encoding. On success stores a handle in
 * `out`; free it with `fx_problem_free`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be valid for writes.
 */
enum FxStatus fx_problem_parse_json(const char *json, struct FxProblem **out);

/**
 * Computes the index. `budget_steps` of 0 selects the default budget; when
 * `with_oracle` is nonzero the brute-force oracle cross-checks the result.
 *
 * # Safety
 * `problem` must come from `fx_problem_parse_json`; `out` must be valid for writes.
 */
enum FxStatus fx_compute_index(const struct FxProblem *problem,
                               int32_t with_oracle,
                               uint32_t max_truncation,
                               uint64_t budget_steps,
                               struct FxResult **out);

/**
 * The computed index, or -1 when it is infinite.
 *
 * # Safety
 * `result` must come from `fx_compute_index`.
 */
int64_t fx_result_index(const struct FxResult *result);

/**
 * Number of ideal generators that fed the standard-basis computation.
 *
 * # Safety
 * `result` must come from `fx_compute_index`.
 */
uint64_t fx_result_generator_count(const struct FxResult *result);

/**
 * Number of standard-basis elements.
 *
 * # Safety
 * `result` must come from `fx_compute_index`.
 */
uint64_t fx_result_basis_size(const struct FxResult *result);

/**
 * Number of staircase monomials (equals the index when it is finite).
 *
 * # Safety
 * `result` must come from `fx_compute_index`.
 */
uint64_t fx_result_staircase_len(const struct FxResult *result);

/**
 * The i-th staircase monomial as a string, or null when out of range. Owned
 * by the result handle.
 *
 * # Safety
 * `result` must come from `fx_compute_index`.
 */
const char *fx_result_staircase_monomial(const struct FxResult *result, uint64_t i);

/**
 * Full result as a JSON document (same schema as the CLI output, without
 * timings). Owned by the result handle.
 *
 * # Safety
 * `result` must come from `fx_compute_index`.
 */
const char *fx_result_to_json(const struct FxResult *result);

/**
 * # Safety
 * `problem` must come from `fx_problem_parse_json` and not be freed twice.
 */
void fx_problem_free(struct FxProblem *problem);

/**
 * # Safety
 * `result` must come from `fx_compute_index` and not be freed twice.
 */
void fx_result_free(struct FxResult *result);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FORMINDEX_H */
