#ifndef INOUE_AUT_H
#define INOUE_AUT_H

/* This file is generated by cbindgen from inoue-aut-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum InoueStatus {
  /**
   * The call succeeded and, where applicable, every check passed.
   */
  INOUE_STATUS_OK = 0,
  /**
   * The computation ran but at least one verification check failed.
   */
  INOUE_STATUS_CHECK_FAILED = 1,
  /**
   * A parameter was rejected.
   */
  INOUE_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A required pointer was null.
   */
  INOUE_STATUS_NULL_POINTER = 3,
  /**
   * An internal construction or computation error; see
   * `inoue_last_error`.
   */
  INOUE_STATUS_ERROR = 4,
} InoueStatus;

/**
 * Opaque handle for a surface `S(m, alpha)` under verification.
 */
typedef struct InoueEngine InoueEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an engine for `S(m, alpha)`.  `window` of 0 means the default
 * chart window `3m`.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum InoueStatus inoue_engine_new(int64_t m, int64_t window, struct InoueEngine **out);

/**
 * Releases an engine produced by `inoue_engine_new`.
 *
 * # Safety
 * `engine` must be null or a pointer returned by `inoue_engine_new`
 * that has not been freed yet.
 */
void inoue_engine_free(struct InoueEngine *engine);

/**
 * Second Betti number of the engine's surface, or -1 for null input.
 *
 * # Safety
 * `engine` must be null or a live engine pointer.
 */
int64_t inoue_engine_m(const struct InoueEngine *engine);

/**
 * Runs the full verification suite (relations, structure theorems,
 * homomorphism properties) and writes the JSON report to `*out`.
 *
 * # Safety
 * `engine` must be null or a live engine pointer; `out` must be null
 * or valid for writing one pointer.
 */
enum InoueStatus inoue_verify_json(const struct InoueEngine *engine, char **out);

/**
 * Runs only the structure statements (the theorem and its corollary).
 *
 * # Safety
 * Same contracts as `inoue_verify_json`.
 */
enum InoueStatus inoue_structure_json(const struct InoueEngine *engine, char **out);

/**
 * Computes a quotient report.  `kind` is one of `free`, `torus`,
 * `mixed`, `involution`, `cover`; parameters that do not apply to the
 * kind must be negative (the conventional "absent" value).
 *
 * # Safety
 * `engine` must be null or a live engine pointer; `kind` must be null
 * or a NUL-terminated string; `out` must be null or valid for writing
 * one pointer.
 */
enum InoueStatus inoue_quotient_json(const struct InoueEngine *engine,
                                     const char *kind,
                                     int64_t l,
                                     int64_t j,
                                     int64_t root,
                                     char **out);

/**
 * Releases a string returned by the report entry points.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not
 * been freed yet.
 */
void inoue_string_free(char *s);

/**
 * Message for the most recent failure on this thread; the pointer stays
 * valid until the next failing call on the same thread.  Null when no
 * error has been recorded.
 */
const char *inoue_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INOUE_AUT_H */
