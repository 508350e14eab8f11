#ifndef OPNORM_H
#define OPNORM_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define OPN_NORM_ONE 1

#define OPN_NORM_TWO 2

#define OPN_NORM_INFINITY 3

// Result codes. `GUARD_EXCEEDED` and `NUMERICAL_FAILURE` share their values
// with the command-line exit statuses.
typedef enum {
  OPN_STATUS_OK = 0,
  OPN_STATUS_NULL_POINTER = 1,
  OPN_STATUS_INVALID_ARGUMENT = 2,
  OPN_STATUS_GUARD_EXCEEDED = 3,
  OPN_STATUS_NUMERICAL_FAILURE = 4,
  OPN_STATUS_BUFFER_TOO_SMALL = 5,
  OPN_STATUS_PANIC = 6,
} OpnStatus;

// Opaque dense matrix.
typedef struct OpnMatrix OpnMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next `opn_*` call on the same thread.
const char *opn_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *opn_version(void);

// Copies `rows * cols` row-major values into a new matrix handle.
OpnStatus opn_matrix_new(size_t rows, size_t cols, const double *data, OpnMatrix **out);

// Parses matrix CSV text (one row per line, comma-separated).
OpnStatus opn_matrix_from_csv(const char *text, OpnMatrix **out);

// Releases a handle. Null is ignored.
void opn_matrix_free(OpnMatrix *m);

// Row count, or 0 for null.
size_t opn_matrix_rows(const OpnMatrix *m);

// Column count, or 0 for null.
size_t opn_matrix_cols(const OpnMatrix *m);

// Copies the row-major entries into `out`, which must hold `rows * cols`.
OpnStatus opn_matrix_copy_data(const OpnMatrix *m, double *out, size_t len);

// `‖A‖_{p,q}`. Writes the value to `*value`; if `witness` is non-null it
// receives the `cols` witness entries (`witness_len` must be at least
// `cols`). `force` lifts the 2^30 enumeration guard; `threads` of 0 means 1.
OpnStatus opn_induced_norm(const OpnMatrix *m,
                           uint32_t p,
                           uint32_t q,
                           bool force,
                           size_t threads,
                           double *value,
                           double *witness,
                           size_t witness_len);

// Symmetric PSD square root `U D^{1/2} Uᵀ` as a new handle.
OpnStatus opn_psd_sqrt(const OpnMatrix *m, OpnMatrix **out);

// Max-cut threshold through the norm: builds the MC-matrix of the graph on
// `n` vertices with `edge_count` edges given as 1-based pairs in
// `edges[2k], edges[2k+1]`, then reports `‖A^{1/2}‖²_{∞,2}` in
// `*norm_squared` (if non-null) and whether it reaches `threshold`.
OpnStatus opn_maxcut_decide(size_t n,
                            const size_t *edges,
                            size_t edge_count,
                            uint64_t threshold,
                            bool *decision,
                            double *norm_squared);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPNORM_H */
