#ifndef POLYTRACT_H
#define POLYTRACT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtMode {
  PT_MODE_STRONG = 0,
  PT_MODE_WEAK = 1,
} PtMode;

typedef enum PtStatus {
  PT_STATUS_OK = 0,
  PT_STATUS_NULL_POINTER = 1,
  /**
   * Input could not be parsed or has the wrong shape.
   */
  PT_STATUS_MALFORMED = 2,
  /**
   * Well-formed input outside the domain of the operation (not M-convex, guard exceeded, ...).
   */
  PT_STATUS_DOMAIN = 3,
  PT_STATUS_INVALID_UTF8 = 4,
  PT_STATUS_PANIC = 5,
} PtStatus;

typedef enum PtVerdict {
  PT_VERDICT_VALID = 0,
  PT_VERDICT_VIOLATED = 1,
  /**
   * 1 ≠ −1 in the tract and the set is not a matroid translate.
   */
  PT_VERDICT_IDEMPOTENCY_OBSTRUCTION = 2,
} PtVerdict;

/**
 * Opaque representation of an M-convex set over a tract.
 */
typedef struct PtRep PtRep;

/**
 * Opaque M-convex set.
 */
typedef struct PtSet PtSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Owned by the library;
 * valid until the next failing call on the same thread.
 */
const char *pt_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library that has not been freed.
 */
void pt_string_free(char *s);

/**
 * Parse `{"n":…,"r":…,"bases":[…]}` into a validated M-convex set.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PtStatus pt_set_from_json(const char *json, struct PtSet **out);

/**
 * # Safety
 * `set` must be NULL or a handle from this library that has not been freed.
 */
void pt_set_free(struct PtSet *set);

/**
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_set_to_json(const struct PtSet *set, char **out);

/**
 * Number of bases.
 *
 * # Safety
 * `set` must be a live handle.
 */
size_t pt_set_len(const struct PtSet *set);

/**
 * Test the exchange axiom on a point list without building a set. `*m_convex` is 1 or 0.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `m_convex` must be writable.
 */
enum PtStatus pt_check_points(const char *json, int32_t *m_convex);

/**
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_set_dual(const struct PtSet *set, struct PtSet **out);

/**
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_set_canonical(const struct PtSet *set, struct PtSet **out);

/**
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_set_tutte_rank(const struct PtSet *set, size_t *out);

/**
 * Free rank of the foundation's unit group; `*minus_one_trivial` is 1 when −1 = 1 there.
 *
 * # Safety
 * `set` must be a live handle; the out pointers must be writable.
 */
enum PtStatus pt_set_foundation(const struct PtSet *set,
                                size_t *free_rank,
                                int32_t *minus_one_trivial);

/**
 * Parse `{"tract":…,"set":{…},"values":[…]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PtStatus pt_rep_from_json(const char *json, struct PtRep **out);

/**
 * # Safety
 * `rep` must be NULL or a handle from this library that has not been freed.
 */
void pt_rep_free(struct PtRep *rep);

/**
 * # Safety
 * `rep` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_rep_to_json(const struct PtRep *rep, char **out);

/**
 * # Safety
 * `rep` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_rep_verify(const struct PtRep *rep, enum PtMode mode, enum PtVerdict *out);

/**
 * Littlewood–Richardson coefficient c^ν_{λμ} as a count of integral hives of size `r`.
 *
 * # Safety
 * Each array must hold the stated number of elements (it may be NULL when the length is 0).
 */
enum PtStatus pt_lr_coefficient(const int64_t *lambda,
                                size_t lambda_len,
                                const int64_t *mu,
                                size_t mu_len,
                                const int64_t *nu,
                                size_t nu_len,
                                int64_t r,
                                uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYTRACT_H */
