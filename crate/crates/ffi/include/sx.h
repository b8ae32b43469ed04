#ifndef SX_H
#define SX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SxStatus {
  SX_STATUS_OK = 0,
  SX_STATUS_NULL_POINTER = 1,
  SX_STATUS_INVALID_UTF8 = 2,
  SX_STATUS_PARSE = 3,
  SX_STATUS_INVALID_ARGUMENT = 4,
  SX_STATUS_FAILED = 5,
  SX_STATUS_GUARD_EXCEEDED = 6,
  SX_STATUS_PANIC = 7,
} SxStatus;

typedef enum SxCertifier {
  SX_CERTIFIER_STELLATED = 0,
  SX_CERTIFIER_SHELLED = 1,
  SX_CERTIFIER_STACKED_BALL = 2,
  SX_CERTIFIER_ONE_STACKED = 3,
  SX_CERTIFIER_STACKED_SPHERE = 4,
  SX_CERTIFIER_COLLAPSE = 5,
} SxCertifier;

// Opaque simplicial complex.
typedef struct SxComplex SxComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The
// pointer stays valid until the next failing call on the same thread.
const char *sx_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sx_string_free(char *s);

// Parses `.fac` text or JSON into a new complex.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum SxStatus sx_complex_parse(const char *text, struct SxComplex **out);

// Loads a bundled example complex by name.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum SxStatus sx_complex_fixture(const char *name, struct SxComplex **out);

// Releases a complex. NULL is ignored.
//
// # Safety
// `c` must come from this library and not have been freed.
void sx_complex_free(struct SxComplex *c);

// Dimension, or -2 for a NULL handle (-1 is the empty complex).
//
// # Safety
// `c` must be NULL or a live handle.
int64_t sx_complex_dim(const struct SxComplex *c);

// # Safety
// `c` must be NULL or a live handle.
uintptr_t sx_complex_vertex_count(const struct SxComplex *c);

// # Safety
// `c` must be NULL or a live handle.
uintptr_t sx_complex_facet_count(const struct SxComplex *c);

// Writes the complex as `.fac` text (`json == 0`) or JSON.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SxStatus sx_complex_write(const struct SxComplex *c, int32_t json, char **out);

// The f-vector as a JSON array.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SxStatus sx_complex_f_vector_json(const struct SxComplex *c, char **out);

// The boundary as a new complex.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SxStatus sx_complex_boundary(const struct SxComplex *c, struct SxComplex **out);

// Reduced Betti numbers as `{"field": ..., "reduced_betti": [...]}`.
// `field` is 0 for the rationals or a prime.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SxStatus sx_homology_json(const struct SxComplex *c, uint64_t field, char **out);

// Runs a certifier with the default budget and the given seed. The
// verdict is written as JSON to `out`; `status_out` (if not NULL) gets 0
// for proved, 1 for refuted, 2 for unknown.
//
// # Safety
// `c` must be a live handle; `out` must be writable; `status_out` must be
// NULL or writable.
enum SxStatus sx_certify(const struct SxComplex *c,
                         enum SxCertifier which,
                         int64_t k,
                         uint64_t seed,
                         char **out,
                         int32_t *status_out);

// Order of the automorphism group as a decimal string.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SxStatus sx_automorphism_order(const struct SxComplex *c,
                                    uintptr_t guard_vertices,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SX_H */
