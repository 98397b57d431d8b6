#ifndef GREENIDX_H
#define GREENIDX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum GiStatus {
  GI_STATUS_OK = 0,
  GI_STATUS_NULL_POINTER = 1,
  GI_STATUS_INVALID_ARGUMENT = 2,
  GI_STATUS_NOT_ASSOCIATIVE = 3,
  GI_STATUS_INVALID_ELEMENT = 4,
  GI_STATUS_NOT_CLOSED = 5,
  GI_STATUS_MALFORMED_INPUT = 6,
  GI_STATUS_NOT_GENERATING = 7,
  GI_STATUS_BOUND_EXCEEDED = 8,
  GI_STATUS_BUFFER_TOO_SMALL = 9,
  GI_STATUS_INTERNAL = 10,
  GI_STATUS_PANIC = 11,
} GiStatus;

// Relative Green data and connector tables for a pair `T ≤ S`.
typedef struct GiGreen GiGreen;

// A validated finite semigroup.
typedef struct GiSemigroup GiSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Free with
// `gi_string_free`.
char *gi_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void gi_string_free(char *s);

// Library version, a static string.
const char *gi_version(void);

// Builds a semigroup from a row-major `order × order` table.
//
// # Safety
// `entries` must point to `order * order` values; `out` must be writable.
enum GiStatus gi_semigroup_from_table(const size_t *entries,
                                      size_t order,
                                      struct GiSemigroup **out_handle);

// Builds a semigroup from the JSON file format `{"order", "table", "names"?}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum GiStatus gi_semigroup_from_json(const char *json, struct GiSemigroup **out_handle);

// # Safety
// `s` must be NULL or a handle from this library, not yet freed.
void gi_semigroup_free(struct GiSemigroup *s);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum GiStatus gi_semigroup_order(const struct GiSemigroup *s, size_t *out_order);

// Product in `S¹`.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum GiStatus gi_semigroup_mul(const struct GiSemigroup *s,
                               size_t x,
                               size_t y,
                               size_t *out_product);

// Relative Green data for the subsemigroup with the given members.
//
// # Safety
// `s` must be a live handle, `members` must point to `len` values, and
// `out` must be writable.
enum GiStatus gi_green_new(const struct GiSemigroup *s,
                           const size_t *members,
                           size_t len,
                           struct GiGreen **out_handle);

// # Safety
// `g` must be NULL or a handle from this library, not yet freed.
void gi_green_free(struct GiGreen *g);

// Number of complement classes plus one.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_green_index(const struct GiGreen *g, size_t *out_index);

// Rees index `|S ∖ T|`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_green_rees_index(const struct GiGreen *g, size_t *out_index);

// Class index of `u`: `0` for members of `T¹`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_green_class_of(const struct GiGreen *g, size_t u, size_t *out_class);

// Representative of class `i`; class `0` gives the adjoined identity.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_green_rep(const struct GiGreen *g, size_t i, size_t *out_rep);

// `ρ(s, i)`: the class index with `s·h_i = h_ρ·σ`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_connector_rho(const struct GiGreen *g, size_t s, size_t i, size_t *out_value);

// `σ(s, i) ∈ T¹`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_connector_sigma(const struct GiGreen *g, size_t s, size_t i, size_t *out_value);

// `λ(i, s)`: the class index with `h_i·s = τ·h_λ`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_connector_lambda(const struct GiGreen *g, size_t i, size_t s, size_t *out_value);

// `τ(i, s) ∈ T¹`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GiStatus gi_connector_tau(const struct GiGreen *g, size_t i, size_t s, size_t *out_value);

// Rewrites `h_i·w` as `t₁…tₙ·h_j`. Writes the `n = len` letters `t_k`
// to `out_word` and `j` to `out_class`.
//
// # Safety
// `word` and `out_word` must point to `len` values; `g` must be live.
enum GiStatus gi_push_right(const struct GiGreen *g,
                            size_t i,
                            const size_t *word,
                            size_t len,
                            size_t *out_word,
                            size_t *out_class);

// Generating set of `T` obtained from the generating set `gens` of `S`.
// The count is always written to `out_len`; when it exceeds `capacity`
// nothing else is written and `GI_STATUS_BUFFER_TOO_SMALL` is returned.
//
// # Safety
// `gens` must point to `len` values, `buf` to `capacity` writable values.
enum GiStatus gi_schreier_generators(const struct GiGreen *g,
                                     const size_t *gens,
                                     size_t len,
                                     size_t *buf,
                                     size_t capacity,
                                     size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GREENIDX_H */
