#ifndef MULTMON_H
#define MULTMON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes, numerically equal to the CLI exit codes.
 */
typedef enum MmStatus {
  MM_STATUS_OK = 0,
  /**
   * Parse error, bad argument or null pointer.
   */
  MM_STATUS_INVALID_INPUT = 1,
  MM_STATUS_HYPOTHESIS = 2,
  MM_STATUS_UNSUPPORTED = 3,
  MM_STATUS_RESOURCE_CAP = 4,
  MM_STATUS_INTERNAL = 5,
} MmStatus;

typedef enum MmMethod {
  /**
   * Cheapest applicable closed form, falling back to the Taylor engine.
   */
  MM_METHOD_AUTO = 0,
  /**
   * Taylor resolution power sums.
   */
  MM_METHOD_PS = 1,
  /**
   * Minimal covers and standard-monomial counts.
   */
  MM_METHOD_ORACLE = 2,
} MmMethod;

/**
 * Opaque handle to a minimalized monomial ideal.
 */
typedef struct MmIdeal MmIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mm_last_error_message(void);

/**
 * Parses `text` into a new ideal. `vars` is an optional comma-separated
 * variable order and may be null.
 *
 * # Safety
 * `text` must be a nul-terminated string, `vars` null or nul-terminated,
 * and `out` a valid place to store the handle.
 */
enum MmStatus mm_ideal_parse(const char *text, const char *vars, struct MmIdeal **out);

/**
 * # Safety
 * `ideal` must be null or a handle from `mm_ideal_parse` not yet freed.
 */
void mm_ideal_free(struct MmIdeal *ideal);

/**
 * Number of minimal generators; 0 for a null handle.
 *
 * # Safety
 * `ideal` must be null or a live handle.
 */
size_t mm_ideal_generator_count(const struct MmIdeal *ideal);

/**
 * # Safety
 * `ideal` must be null or a live handle.
 */
size_t mm_ideal_variable_count(const struct MmIdeal *ideal);

/**
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum MmStatus mm_ideal_codim(const struct MmIdeal *ideal, size_t *out);

/**
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum MmStatus mm_ideal_multiplicity(const struct MmIdeal *ideal,
                                    enum MmMethod method,
                                    uint64_t *out);

/**
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum MmStatus mm_ideal_is_dominant(const struct MmIdeal *ideal, bool *out);

/**
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum MmStatus mm_ideal_is_complete_intersection(const struct MmIdeal *ideal, bool *out);

/**
 * Regularity of a dominant ideal; `Unsupported` otherwise.
 *
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum MmStatus mm_ideal_regularity(const struct MmIdeal *ideal, uint64_t *out);

/**
 * Canonical text of the ideal, or null for a null handle. Release with
 * `mm_string_free`.
 *
 * # Safety
 * `ideal` must be null or a live handle.
 */
char *mm_ideal_to_string(const struct MmIdeal *ideal);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void mm_string_free(char *s);

/**
 * Runs a CLI command on one ideal and returns its JSON document in `out`
 * (release with `mm_string_free`). The status is the document's exit code;
 * `out` is filled whenever the command name was valid.
 *
 * # Safety
 * `command` and `text` must be nul-terminated, `vars` null or
 * nul-terminated, and `out` writable.
 */
enum MmStatus mm_run_json(const char *command,
                          const char *text,
                          const char *vars,
                          bool check,
                          char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTMON_H */
