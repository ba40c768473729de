#ifndef AINFP_H
#define AINFP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AinfpStatus {
  AINFP_STATUS_OK = 0,
  AINFP_STATUS_NULL_POINTER = 1,
  AINFP_STATUS_INVALID_UTF8 = 2,
  AINFP_STATUS_INPUT = 3,
  AINFP_STATUS_IDENTITY = 4,
  AINFP_STATUS_PRECONDITION = 5,
  AINFP_STATUS_FIELD_MISMATCH = 6,
  AINFP_STATUS_BUDGET = 7,
  AINFP_STATUS_INTERNAL = 8,
} AinfpStatus;

// Filtered dg algebra.
typedef struct AinfpAlgebra AinfpAlgebra;

// Minimal A_N-structure on persistent cohomology.
typedef struct AinfpStructure AinfpStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *ainfp_last_error(void);

// Parses a filtered dg algebra from its JSON description and checks its
// identities.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be valid for
// writes. On success `*out` must later be passed to [`ainfp_algebra_free`].
enum AinfpStatus ainfp_algebra_from_json(const char *json, struct AinfpAlgebra **out);

// A built-in algebra by name over `F_p`, or over `Q` when `p` is 0.
//
// # Safety
// `name` must be a valid NUL-terminated string; `out` must be valid for
// writes.
enum AinfpStatus ainfp_algebra_fixture(const char *name, uint32_t p, struct AinfpAlgebra **out);

// Cochain algebra of the Vietoris-Rips complex of `n_points` points of
// dimension `dim` (row-major coordinates), up to simplices of dimension
// `max_dim`. `p` selects the field as in [`ainfp_algebra_fixture`].
//
// # Safety
// `coords` must point to `n_points * dim` readable doubles (or be null when
// the product is 0); `out` must be valid for writes.
enum AinfpStatus ainfp_algebra_from_points(const double *coords,
                                           size_t n_points,
                                           size_t dim,
                                           size_t max_dim,
                                           uint32_t p,
                                           struct AinfpAlgebra **out);

// # Safety
// `alg` must be null or a handle from this library not yet freed.
void ainfp_algebra_free(struct AinfpAlgebra *alg);

// Persistent cohomology barcode as a JSON array of
// `{"degree", "lower", "upper", "multiplicity"}`.
//
// # Safety
// `alg` must be a live handle; `out` must be valid for writes.
enum AinfpStatus ainfp_barcode_json(const struct AinfpAlgebra *alg, char **out);

// Transfers the Rees algebra of `alg` to its cohomology up to arity `n`.
//
// # Safety
// `alg` must be a live handle; `out` must be valid for writes. On success
// `*out` must later be passed to [`ainfp_structure_free`].
enum AinfpStatus ainfp_transfer(const struct AinfpAlgebra *alg,
                                size_t n,
                                uint64_t seed,
                                struct AinfpStructure **out);

// # Safety
// `s` must be null or a handle from this library not yet freed.
void ainfp_structure_free(struct AinfpStructure *s);

// The structure as JSON: basis and sparse tensors `m_k`.
//
// # Safety
// `s` must be a live handle; `out` must be valid for writes.
enum AinfpStatus ainfp_structure_json(const struct AinfpStructure *s, char **out);

// A_N-bottleneck distance report as JSON; `n` = 1 is the classical
// bottleneck distance.
//
// # Safety
// `a` and `b` must be live handles; `out` must be valid for writes.
enum AinfpStatus ainfp_distance(const struct AinfpStructure *a,
                                const struct AinfpStructure *b,
                                size_t n,
                                char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void ainfp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AINFP_H */
