#ifndef LINTRANS_H
#define LINTRANS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum LtStatus {
  LT_STATUS_OK = 0,
  LT_STATUS_NULL_POINTER = 1,
  LT_STATUS_INVALID_UTF8 = 2,
  LT_STATUS_PARSE_ERROR = 3,
  LT_STATUS_UNKNOWN_ID = 4,
  LT_STATUS_LANGUAGE_MISMATCH = 5,
  LT_STATUS_PANIC = 6,
} LtStatus;

/**
 * What `lt_prove` found.
 */
typedef enum LtProofOutcome {
  LT_PROOF_OUTCOME_PROVED = 0,
  /**
   * The search space was exhausted without hitting a bound.
   */
  LT_PROOF_OUTCOME_SATURATED = 1,
  /**
   * A depth, contraction or time bound cut the search short.
   */
  LT_PROOF_OUTCOME_BUDGET_EXHAUSTED = 2,
} LtProofOutcome;

/**
 * Opaque formula handle.
 */
typedef struct LtFormula LtFormula;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *lt_last_error(void);

/**
 * Parses `text` in language `lang` ("il", "cll" or "ill").
 *
 * # Safety
 * `text` and `lang` must be NUL-terminated strings; `out` must be writable.
 */
enum LtStatus lt_formula_parse(const char *text, const char *lang, struct LtFormula **out);

/**
 * Frees a handle; null is ignored.
 *
 * # Safety
 * `f` must come from this library and not be freed twice.
 */
void lt_formula_free(struct LtFormula *f);

/**
 * Prints a formula in its language's concrete syntax.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable. Free the result with
 * `lt_string_free`.
 */
enum LtStatus lt_formula_print(const struct LtFormula *f, char **out);

/**
 * Applies translation `id` (for example "gg" or "kolm-outer").
 *
 * # Safety
 * `f` must be a live handle, `id` a NUL-terminated string, `out` writable.
 */
enum LtStatus lt_translate(const struct LtFormula *f, const char *id, struct LtFormula **out);

/**
 * Rewrites a linear formula with rule set `id` under its own strategy.
 *
 * # Safety
 * As for `lt_translate`.
 */
enum LtStatus lt_simplify(const struct LtFormula *f, const char *id, struct LtFormula **out);

/**
 * Searches for a proof of `sequent` ("A, B |- C", or a bare formula) in
 * `theory` ("ill", "ilb", "cllb", "clb"). Zero `max_depth` or `timeout_ms`
 * select the defaults.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum LtStatus lt_prove(const char *sequent,
                       const char *theory,
                       uint32_t max_depth,
                       uint64_t timeout_ms,
                       enum LtProofOutcome *out);

/**
 * Searches for a finite countermodel. On success `*model` is its text
 * rendering, or null when none exists within the bounds.
 *
 * # Safety
 * String arguments must be NUL-terminated; `model` must be writable. Free
 * a non-null result with `lt_string_free`.
 */
enum LtStatus lt_refute(const char *sequent,
                        const char *theory,
                        uint32_t max_size,
                        uint32_t max_domain,
                        char **model);

/**
 * Frees a string returned by the library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void lt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINTRANS_H */
