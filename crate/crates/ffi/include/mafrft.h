#ifndef MAFRFT_H
#define MAFRFT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// `0` = standard DFT, `1` = centered DFT.
#define MAFRFT_VARIANT_STANDARD 0

#define MAFRFT_VARIANT_CENTERED 1

// `0` = per-order oracle, `1` = N row FFTs, `2` = mirror-halved row FFTs.
#define MAFRFT_PATH_NAIVE 0

#define MAFRFT_PATH_FULL 1

#define MAFRFT_PATH_HALF 2

// Status codes returned by every entry point.
typedef enum MafrftStatus {
  MAFRFT_STATUS_OK = 0,
  MAFRFT_STATUS_NULL_POINTER = 1,
  MAFRFT_STATUS_INVALID_ARGUMENT = 2,
  MAFRFT_STATUS_LENGTH_MISMATCH = 3,
  MAFRFT_STATUS_NON_FINITE = 4,
  MAFRFT_STATUS_ODD_WITHOUT_PAD = 5,
  MAFRFT_STATUS_NUMERICAL_FAILURE = 6,
  MAFRFT_STATUS_PANIC = 7,
} MafrftStatus;

// Opaque eigenbasis handle.
typedef struct MafrftBasis MafrftBasis;

// Opaque multiangle result handle (`rows` samples by `cols` orders).
typedef struct MafrftResult MafrftResult;

// Eigenbasis validation summary.
typedef struct MafrftReport {
  double orthonormality_residual;
  double eigen_residual;
  double symmetry_residual;
  // Counts for eigenvalues 1, -j, -1, j.
  size_t multiplicities[4];
  size_t expected[4];
  bool pass;
} MafrftReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, or null. Valid until the next call on this thread.
const char *mafrft_last_error(void);

// Builds the eigenbasis of size `n` (at least 4).
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum MafrftStatus mafrft_basis_new(size_t n, int32_t variant, struct MafrftBasis **out);

// Releases a basis. Null is ignored.
//
// # Safety
// `basis` must come from [`mafrft_basis_new`] and not have been freed.
void mafrft_basis_free(struct MafrftBasis *basis);

// Signal length of the basis, or 0 for null.
//
// # Safety
// `basis` must be null or a live handle.
size_t mafrft_basis_len(const struct MafrftBasis *basis);

// Writes the validation summary of `basis` to `report`.
//
// # Safety
// `basis` must be a live handle and `report` writable.
enum MafrftStatus mafrft_basis_validate(const struct MafrftBasis *basis,
                                        struct MafrftReport *report);

// Fractional transform of order `a` applied to `len` interleaved samples.
//
// # Safety
// `input` and `output` must each hold `2 * len` doubles; they may alias.
enum MafrftStatus mafrft_frft_apply(const struct MafrftBasis *basis,
                                    double a,
                                    const double *input,
                                    double *output,
                                    size_t len);

// Transform at every order `4r/R` at once. `pad_odd` lets the half path handle odd lengths
// with `R = len + 1`.
//
// # Safety
// `input` must hold `2 * len` doubles and `out` must be writable.
enum MafrftStatus mafrft_multiangle(const struct MafrftBasis *basis,
                                    const double *input,
                                    size_t len,
                                    int32_t path,
                                    bool pad_odd,
                                    struct MafrftResult **out);

// Releases a result. Null is ignored.
//
// # Safety
// `result` must come from [`mafrft_multiangle`] and not have been freed.
void mafrft_result_free(struct MafrftResult *result);

// Number of samples (rows), or 0 for null.
//
// # Safety
// `result` must be null or a live handle.
size_t mafrft_result_rows(const struct MafrftResult *result);

// Number of orders (columns), or 0 for null.
//
// # Safety
// `result` must be null or a live handle.
size_t mafrft_result_cols(const struct MafrftResult *result);

// FFT invocations used to compute the result (0 for the naive path or null).
//
// # Safety
// `result` must be null or a live handle.
size_t mafrft_result_fft_count(const struct MafrftResult *result);

// Copies the row-major `rows x cols` matrix as interleaved pairs into `out` (capacity in
// complex values).
//
// # Safety
// `out` must hold `2 * capacity` doubles.
enum MafrftStatus mafrft_result_copy(const struct MafrftResult *result,
                                     double *out,
                                     size_t capacity);

// Copies the `cols` fractional orders into `out`.
//
// # Safety
// `out` must hold `capacity` doubles.
enum MafrftStatus mafrft_result_orders(const struct MafrftResult *result,
                                       double *out,
                                       size_t capacity);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MAFRFT_H */
