#ifndef FOURIER_JACOBI_H
#define FOURIER_JACOBI_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum FjtStatus {
  FJT_STATUS_OK = 0,
  FJT_STATUS_NULL_POINTER = 1,
  FJT_STATUS_DOMAIN = 2,
  FJT_STATUS_REGIME = 3,
  FJT_STATUS_DECAY_CONDITION = 4,
  FJT_STATUS_LIPSCHITZ = 5,
  FJT_STATUS_CONFIG = 6,
  FJT_STATUS_NON_CONVERGENCE = 7,
  FJT_STATUS_EVALUATION = 8,
  FJT_STATUS_DIVERGENCE = 9,
  FJT_STATUS_ACCELERATION_FAILURE = 10,
  FJT_STATUS_OVERFLOW = 11,
  FJT_STATUS_PANIC = 12,
} FjtStatus;

// Opaque parameter pair (a, c).
typedef struct FjtParams FjtParams;

// Opaque real coefficient sequence a_1..a_N bound to a parameter pair.
typedef struct FjtSequence FjtSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The last error message of this thread, or an empty string. Never null.
const char *fjt_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *fjt_version(void);

// Creates a parameter handle; fails with `Regime` unless a, c > 0.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle pointer.
enum FjtStatus fjt_params_new(double a, double c, struct FjtParams **out);

// Releases a parameter handle. Null is ignored.
//
// # Safety
// `params` must be null or a handle from [`fjt_params_new`] not yet freed.
void fjt_params_free(struct FjtParams *params);

// F_n(x) for x >= 0.
//
// # Safety
// `params` must be a live handle and `out` a valid pointer.
enum FjtStatus fjt_forward_kernel(const struct FjtParams *params,
                                  uint32_t n,
                                  double x,
                                  double *out);

// The inverse kernel G(x, u).
//
// # Safety
// `params` must be a live handle and `out` a valid pointer.
enum FjtStatus fjt_inverse_kernel(const struct FjtParams *params, double x, double u, double *out);

// Phi_n(x) computed to the given tolerances.
//
// # Safety
// `params` must be a live handle and `out` a valid pointer.
enum FjtStatus fjt_phi_kernel(const struct FjtParams *params,
                              uint32_t n,
                              double x,
                              double rel_tol,
                              double abs_tol,
                              double *out);

// The inversion, reconstruction and closed-form prefactors for index n.
//
// # Safety
// `params` must be a live handle; the three out pointers must be valid.
enum FjtStatus fjt_normalization(const struct FjtParams *params,
                                 uint32_t n,
                                 double *inversion,
                                 double *reconstruction,
                                 double *closed_form);

// Copies `len` coefficients into a new sequence handle.
//
// # Safety
// `params` must be a live handle, `values` must point to `len` doubles, and
// `out` must be a valid pointer.
enum FjtStatus fjt_sequence_new(const struct FjtParams *params,
                                const double *values,
                                size_t len,
                                double delta,
                                struct FjtSequence **out);

// The built-in sequence a_n = e^(-2n) |Gamma(a + in/2)|^2, n = 1..len.
//
// # Safety
// `params` must be a live handle and `out` a valid pointer.
enum FjtStatus fjt_sequence_default(const struct FjtParams *params,
                                    size_t len,
                                    struct FjtSequence **out);

// Number of coefficients in a sequence; 0 for null.
//
// # Safety
// `seq` must be null or a live handle.
size_t fjt_sequence_len(const struct FjtSequence *seq);

// Copies up to `capacity` coefficients into `values`.
//
// # Safety
// `seq` must be a live handle and `values` must point to `capacity` doubles.
enum FjtStatus fjt_sequence_values(const struct FjtSequence *seq, double *values, size_t capacity);

// Releases a sequence handle. Null is ignored.
//
// # Safety
// `seq` must be null or a handle not yet freed.
void fjt_sequence_free(struct FjtSequence *seq);

// Sum_n a_n F_n(x) for x > 0, with a bound on the truncated tail
// (infinite when unavailable). `tail_bound` may be null.
//
// # Safety
// `seq` must be a live handle and `value` a valid pointer.
enum FjtStatus fjt_synthesize(const struct FjtSequence *seq,
                              double x,
                              double *value,
                              double *tail_bound);

// Recovers a_n from the function synthesized by `seq`.
//
// # Safety
// `seq` must be a live handle and `out` a valid pointer.
enum FjtStatus fjt_invert_synthesized(const struct FjtSequence *seq,
                                      uint32_t n,
                                      double rel_tol,
                                      double abs_tol,
                                      double *out);

// Reconstructs f(x) from the first `terms` coefficients.
//
// # Safety
// `seq` must be a live handle and `out` a valid pointer.
enum FjtStatus fjt_reconstruct(const struct FjtSequence *seq,
                               double x,
                               size_t terms,
                               double rel_tol,
                               double abs_tol,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOURIER_JACOBI_H */
