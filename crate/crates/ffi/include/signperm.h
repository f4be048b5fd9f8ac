#ifndef SIGNPERM_H
#define SIGNPERM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function in this interface.
 */
typedef enum SignpermStatus {
  SIGNPERM_STATUS_OK = 0,
  SIGNPERM_STATUS_NULL_POINTER = 1,
  SIGNPERM_STATUS_INVALID_UTF8 = 2,
  SIGNPERM_STATUS_VALIDATION = 3,
  SIGNPERM_STATUS_PARSE = 4,
  SIGNPERM_STATUS_CAPACITY = 5,
  SIGNPERM_STATUS_DOMAIN = 6,
  SIGNPERM_STATUS_ARITHMETIC = 7,
  SIGNPERM_STATUS_PANIC = 8,
} SignpermStatus;

/**
 * Opaque handle to a validated pattern set.
 */
typedef struct SignpermPatternSet SignpermPatternSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *signperm_last_error(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a pointer obtained from this library and not yet freed.
 */
void signperm_string_free(char *s);

/**
 * Parses a pattern-set literal such as `"1^1 2^2; 2^1 1^3"` over `r` signs.
 *
 * # Safety
 * `literal` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SignpermStatus signperm_pattern_set_parse(const char *literal,
                                               uint32_t r,
                                               struct SignpermPatternSet **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `set` must be NULL or a live handle from this library.
 */
void signperm_pattern_set_free(struct SignpermPatternSet *set);

/**
 * Number of patterns in the set, or 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t signperm_pattern_set_len(const struct SignpermPatternSet *set);

/**
 * Sign bound r of the set, or 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
uint32_t signperm_pattern_set_sign_bound(const struct SignpermPatternSet *set);

/**
 * Writes the set in literal syntax to `*out`.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable pointer.
 */
enum SignpermStatus signperm_pattern_set_to_string(const struct SignpermPatternSet *set,
                                                   char **out);

/**
 * Allocates a new handle holding the least member of the set's symmetry orbit.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable pointer.
 */
enum SignpermStatus signperm_pattern_set_canonical(const struct SignpermPatternSet *set,
                                                   struct SignpermPatternSet **out);

/**
 * Size of the set's symmetry orbit.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable pointer.
 */
enum SignpermStatus signperm_pattern_set_orbit_size(const struct SignpermPatternSet *set,
                                                    size_t *out);

/**
 * Exhaustive count of length-`n` signed permutations over the set's sign
 * bound that avoid every pattern. `node_limit` 0 selects the default guard.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable pointer.
 */
enum SignpermStatus signperm_count_avoiders(const struct SignpermPatternSet *set,
                                            size_t n,
                                            uint64_t node_limit,
                                            char **out);

/**
 * Count for length `n` by `method` (`"brute"`, `"formula"`, `"recurrence"`
 * or `"series"`). Non-brute methods need a set from a registered family.
 *
 * # Safety
 * `set` must be a live handle, `method` a NUL-terminated string and `out`
 * a writable pointer.
 */
enum SignpermStatus signperm_count_by_method(const struct SignpermPatternSet *set,
                                             size_t n,
                                             const char *method,
                                             char **out);

/**
 * Number of length-`n` signed permutations over `r` signs avoiding any one
 * 2-letter signed pattern.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum SignpermStatus signperm_d_count(size_t n, uint32_t r, char **out);

/**
 * Number of Wilf classes of pairs of 2-letter patterns over `r` signs,
 * separated by counts through length `depth`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum SignpermStatus signperm_wilf_class_count(uint32_t r, size_t depth, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGNPERM_H */
