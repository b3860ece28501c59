#ifndef RIDER_TYPES_H
#define RIDER_TYPES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RtStatus {
  RT_STATUS_OK = 0,
  RT_STATUS_NULL_POINTER = 1,
  RT_STATUS_INVALID_UTF8 = 2,
  RT_STATUS_PARSE_ERROR = 3,
  RT_STATUS_INVALID_ARGUMENT = 4,
  RT_STATUS_NOT_FOUND = 5,
  RT_STATUS_OVERFLOW = 6,
  RT_STATUS_ENGINE_ERROR = 7,
  RT_STATUS_PANIC = 8,
} RtStatus;

typedef enum RtAnnotation {
  RT_ANNOTATION_EXACT = 0,
  RT_ANNOTATION_EMPIRICAL = 1,
  RT_ANNOTATION_QUEEN_ONLY = 2,
} RtAnnotation;

/**
 * Opaque census of unlabelled types.
 */
typedef struct RtCensus RtCensus;

/**
 * Opaque move set.
 */
typedef struct RtMoveSet RtMoveSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library on the same thread.
 */
const char *rt_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rt_version(void);

/**
 * Parses `c,d;c,d;…` or a piece name into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RtStatus rt_moveset_parse(const char *text, struct RtMoveSet **out);

/**
 * # Safety
 * `ms` must come from [`rt_moveset_parse`] and not be used afterwards.
 */
void rt_moveset_free(struct RtMoveSet *ms);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RtStatus rt_moveset_r(const struct RtMoveSet *ms, size_t *out);

/**
 * # Safety
 * `out` must be valid.
 */
enum RtStatus rt_t3_closed_form(uint64_t r, uint64_t *out);

/**
 * Table entry for `(q, r)`; `RT_STATUS_NOT_FOUND` for unknown cells.
 *
 * # Safety
 * Out pointers must be valid.
 */
enum RtStatus rt_known_types(size_t q, size_t r, uint64_t *value, enum RtAnnotation *annotation);

/**
 * Exact labelled and unlabelled type counts by finite-field counting.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RtStatus rt_types_ff(const struct RtMoveSet *ms,
                          size_t q,
                          uint64_t *labelled,
                          uint64_t *unlabelled);

/**
 * Unordered nonattacking placements of `q` pieces on the order-`n` board
 * (`square`, `triangle` or `poly:…`).
 *
 * # Safety
 * Pointers must be valid; `board` NUL-terminated.
 */
enum RtStatus rt_count_nonattacking(const struct RtMoveSet *ms,
                                    const char *board,
                                    uint64_t n,
                                    size_t q,
                                    uint64_t *out);

/**
 * Runs the geometric engine and returns a census handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RtStatus rt_census_geometric(const struct RtMoveSet *ms,
                                  size_t q,
                                  size_t refinement,
                                  struct RtCensus **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RtStatus rt_census_size(const struct RtCensus *c, size_t *size, bool *exact);

/**
 * Serializes a census to JSON. Release the string with [`rt_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum RtStatus rt_census_to_json(const struct RtCensus *c, char **out);

/**
 * # Safety
 * `c` must come from [`rt_census_geometric`] and not be used afterwards.
 */
void rt_census_free(struct RtCensus *c);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIDER_TYPES_H */
