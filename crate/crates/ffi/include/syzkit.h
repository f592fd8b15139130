#ifndef SYZKIT_H
#define SYZKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum SyzStatus {
  SYZ_STATUS_OK = 0,
  SYZ_STATUS_NULL_POINTER = 1,
  SYZ_STATUS_INVALID_UTF8 = 2,
  SYZ_STATUS_PARSE_ERROR = 3,
  SYZ_STATUS_UNSUPPORTED_DIMENSION = 4,
  SYZ_STATUS_SEARCH_BUDGET_EXCEEDED = 5,
  SYZ_STATUS_INVALID_CHAMBER = 6,
  SYZ_STATUS_SHAPE_MISMATCH = 7,
  SYZ_STATUS_INVALID_BASIS = 8,
  SYZ_STATUS_VERIFICATION_FAILED = 9,
  SYZ_STATUS_INDEX_OUT_OF_RANGE = 10,
  // Any other domain error; see the last error message.
  SYZ_STATUS_DOMAIN_ERROR = 11,
  SYZ_STATUS_PANIC = 12,
} SyzStatus;

// A Minkowski decomposition into unimodular simplices.
typedef struct SyzDecomposition SyzDecomposition;

// The result of `syz_decompose`.
typedef struct SyzDecompositionList SyzDecompositionList;

// A lattice polytope in dimension 1 or 2.
typedef struct SyzPolytope SyzPolytope;

// Message describing the last failure on this thread, or NULL if none.
// The pointer stays valid until the next failing call on the same thread.
const char *syz_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void syz_string_free(char *s);

// Parses `{"dim":2,"vertices":[[0,0],...]}`; the vertices are re-hulled.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum SyzStatus syz_polytope_from_json(const char *json, struct SyzPolytope **out);

// Canonical JSON of a polytope.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum SyzStatus syz_polytope_to_json(const struct SyzPolytope *p, char **out);

// # Safety
// `p` must be NULL or a handle from this library not yet freed.
void syz_polytope_free(struct SyzPolytope *p);

// Enumerates every decomposition of `p`. A `budget` of 0 selects the default
// node cap.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum SyzStatus syz_decompose(const struct SyzPolytope *p,
                             uint64_t budget,
                             struct SyzDecompositionList **out);

// Number of decompositions in the list; 0 for NULL.
//
// # Safety
// `list` must be NULL or a live handle.
size_t syz_decomposition_list_len(const struct SyzDecompositionList *list);

// Copies entry `index` into a new decomposition handle.
//
// # Safety
// `list` must be a live handle; `out` must be writable.
enum SyzStatus syz_decomposition_list_get(const struct SyzDecompositionList *list,
                                          size_t index,
                                          struct SyzDecomposition **out);

// JSON array of all decompositions in the list.
//
// # Safety
// `list` must be a live handle; `out` must be writable.
enum SyzStatus syz_decomposition_list_to_json(const struct SyzDecompositionList *list, char **out);

// # Safety
// `list` must be NULL or a handle from this library not yet freed.
void syz_decomposition_list_free(struct SyzDecompositionList *list);

// Parses and re-verifies a decomposition.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum SyzStatus syz_decomposition_from_json(const char *json, struct SyzDecomposition **out);

// # Safety
// `d` must be a live handle; `out` must be writable.
enum SyzStatus syz_decomposition_to_json(const struct SyzDecomposition *d, char **out);

// # Safety
// `d` must be NULL or a handle from this library not yet freed.
void syz_decomposition_free(struct SyzDecomposition *d);

// `{"factored":[..],"expanded":..,"table":{"entries":[..]}}`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum SyzStatus syz_mirror_json(const struct SyzDecomposition *d, char **out);

// Transition report for the basis `"(x,y),(x,y),(x,y)"`, or for the default
// basis when `basis` is NULL.
//
// # Safety
// `d` must be a live handle; `basis` NULL or nul-terminated; `out` writable.
enum SyzStatus syz_transition_json(const struct SyzDecomposition *d, const char *basis, char **out);

// Invariant (0 or 1) of the disc class given as
// `{"sector":"D0","multiplicities":[[0],[1],[0]]}` in chamber `chamber`.
//
// # Safety
// `d` must be a live handle; `class_json` nul-terminated; `out` writable.
enum SyzStatus syz_gw_invariant(const struct SyzDecomposition *d,
                                int64_t chamber,
                                const char *class_json,
                                uint8_t *out);

// Whether the walls' tropical rays recover the fan of the polytope.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum SyzStatus syz_dual_fan_check(const struct SyzDecomposition *d, bool *out);

#endif  /* SYZKIT_H */
