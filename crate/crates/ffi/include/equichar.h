#ifndef EQUICHAR_H
#define EQUICHAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqFormat {
  EQ_FORMAT_JSON = 0,
  EQ_FORMAT_TEXT = 1,
  EQ_FORMAT_LATEX = 2,
} EqFormat;

typedef enum EqStatus {
  EQ_STATUS_OK = 0,
  EQ_STATUS_NULL_POINTER = 1,
  EQ_STATUS_INVALID_UTF8 = 2,
  EQ_STATUS_INPUT_ERROR = 3,
  EQ_STATUS_PIPELINE_ERROR = 4,
  EQ_STATUS_OUT_OF_RANGE = 5,
  EQ_STATUS_PANIC = 6,
} EqStatus;

typedef struct EqAnalysis EqAnalysis;

typedef struct EqProblem EqProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. Valid until the
 * next failing call on this thread.
 */
const char *eq_last_error(void);

/**
 * Library version as a static string.
 */
const char *eq_version(void);

/**
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum EqStatus eq_problem_from_builtin(const char *name, struct EqProblem **out);

/**
 * Parses a problem from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum EqStatus eq_problem_from_json(const char *json, struct EqProblem **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum EqStatus eq_problem_from_file(const char *path, struct EqProblem **out);

/**
 * # Safety
 * `problem` must be NULL or a handle from an `eq_problem_from_*` call that
 * has not been freed.
 */
void eq_problem_free(struct EqProblem *problem);

/**
 * Runs the pipeline. `q_max = 0` selects the default range; `verify`
 * enables the brute-force oracle.
 *
 * # Safety
 * `problem` must be a live handle and `out` a writable pointer.
 */
enum EqStatus eq_analyze(const struct EqProblem *problem,
                         uint64_t q_max,
                         bool verify,
                         struct EqAnalysis **out);

/**
 * # Safety
 * `analysis` must be NULL or a live handle from [`eq_analyze`].
 */
void eq_analysis_free(struct EqAnalysis *analysis);

/**
 * Renders the report; the string is released with [`eq_string_free`].
 *
 * # Safety
 * `analysis` must be a live handle and `out` a writable pointer.
 */
enum EqStatus eq_analysis_render(const struct EqAnalysis *analysis,
                                 enum EqFormat format,
                                 char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void eq_string_free(char *s);

/**
 * |G|, or 0 for a NULL handle.
 *
 * # Safety
 * `analysis` must be NULL or a live handle.
 */
uint64_t eq_analysis_group_order(const struct EqAnalysis *analysis);

/**
 * Number of irreducible characters, or 0 for a NULL handle.
 *
 * # Safety
 * `analysis` must be NULL or a live handle.
 */
size_t eq_analysis_irreducible_count(const struct EqAnalysis *analysis);

/**
 * Index of the reciprocity character δ in the table.
 *
 * # Safety
 * `analysis` must be NULL or a live handle.
 */
size_t eq_analysis_reciprocity_index(const struct EqAnalysis *analysis);

/**
 * ñ, the common period.
 *
 * # Safety
 * `analysis` must be a live handle and `out` a writable pointer.
 */
enum EqStatus eq_analysis_period(const struct EqAnalysis *analysis, uint64_t *out);

/**
 * m(χ_index; q) as numerator / denominator. Values at q ≤ 0 use the
 * constituent extension and may be non-integral or negative.
 *
 * # Safety
 * `analysis` must be a live handle; `numerator` and `denominator` writable.
 */
enum EqStatus eq_analysis_multiplicity(const struct EqAnalysis *analysis,
                                       size_t index,
                                       int64_t q,
                                       int64_t *numerator,
                                       int64_t *denominator);

/**
 * Whether every verification verdict passed.
 *
 * # Safety
 * `analysis` must be NULL or a live handle.
 */
bool eq_analysis_all_passed(const struct EqAnalysis *analysis);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EQUICHAR_H */
