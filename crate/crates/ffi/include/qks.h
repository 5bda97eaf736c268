#ifndef QKS_H
#define QKS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum QksStatus {
  QKS_STATUS_OK = 0,
  QKS_STATUS_NULL_POINTER = 1,
  QKS_STATUS_INVALID_UTF8 = 2,
  QKS_STATUS_INVALID_ARGUMENT = 3,
  QKS_STATUS_COMPUTATION_FAILED = 4,
  QKS_STATUS_PANIC = 5,
} QksStatus;

/**
 * A catalog case. Create with `qks_case_new`, release with `qks_case_free`.
 */
typedef struct QksCase QksCase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a catalog case.
 *
 * `case_id` is one of "0", "i", "ii", "iii", "iv". `k = 0` means no root of
 * unity order; case "i" then defaults to `k = 2`. A null `localization`
 * selects the case default.
 *
 * # Safety
 * String arguments are null or NUL-terminated; `out` is a valid pointer.
 */
enum QksStatus qks_case_new(const char *case_id,
                            uint32_t n,
                            uint32_t k,
                            const char *localization,
                            struct QksCase **out);

/**
 * Releases a case handle. Null is ignored.
 *
 * # Safety
 * `case` is null or a handle from `qks_case_new` not yet freed.
 */
void qks_case_free(struct QksCase *case_);

/**
 * Human-readable case label, e.g. `i(n=2,k=2,torus)`. Free with
 * `qks_string_free`.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_case_label(const struct QksCase *case_, char **out);

/**
 * Catalogued fiber degree, or -1 when none is recorded.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_case_expected_degree(const struct QksCase *case_, int64_t *out);

/**
 * Conductor `N` of the field `ℚ(ζ_N)` in which the case's values live.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_case_conductor(const struct QksCase *case_, uint32_t *out);

/**
 * Azumaya scan report as JSON. Free the string with `qks_string_free`.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_scan_json(const struct QksCase *case_,
                             uint32_t samples,
                             uint64_t seed,
                             char **out);

/**
 * Freeness scan report as JSON.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_freeness_json(const struct QksCase *case_,
                                 uint32_t samples,
                                 uint64_t seed,
                                 char **out);

/**
 * Fiber report at `point`, written as `name=value,...`.
 *
 * # Safety
 * `case` is a live handle; `point` is NUL-terminated; `out` is a valid pointer.
 */
enum QksStatus qks_fiber_json(const struct QksCase *case_, const char *point, char **out);

/**
 * Windowed center report as JSON.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_center_json(const struct QksCase *case_, int32_t degree, char **out);

/**
 * Molien series report as JSON.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_molien_json(const struct QksCase *case_,
                               uint32_t m,
                               uint32_t degree,
                               char **out);

/**
 * Graded endomorphism comparison as JSON.
 *
 * # Safety
 * `case` is a live handle; `out` is a valid pointer.
 */
enum QksStatus qks_auslander_json(const struct QksCase *case_,
                                  uint32_t degree,
                                  uint32_t guard,
                                  char **out);

/**
 * Message of the last failed call on this thread, or null. Free the copy
 * with `qks_string_free`.
 */
char *qks_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void qks_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qks_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QKS_H */
