#ifndef TORSIEVE_H
#define TORSIEVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_DOMAIN = 2,
  TS_STATUS_PRECONDITION = 3,
  TS_STATUS_RANGE = 4,
  TS_STATUS_INVALID_UTF8 = 5,
  TS_STATUS_PANIC = 6,
} TsStatus;

// Result of the decomposition sieve.
typedef struct TsAnalysis TsAnalysis;

// Monic integer polynomial.
typedef struct TsPolynomial TsPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the
// library; valid until the next call on this thread.
const char *ts_last_error(void);

// Library version as a static string.
const char *ts_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void ts_string_free(char *s);

// `M'(n)` as an integer. Fails with `RANGE` when it does not fit in 64 bits.
//
// # Safety
// `out` must be valid for writes.
enum TsStatus ts_mprime(uint64_t n, uint64_t *out);

// `M'(n)` rendered as `"48 = 2^4 · 3"`; free with [`ts_string_free`].
//
// # Safety
// `out` must be valid for writes.
enum TsStatus ts_mprime_string(uint64_t n, char **out);

// # Safety
// `out` must be valid for writes.
enum TsStatus ts_lambert_w_m1(double x, double *out);

// Largest root of `x^(1/n) = log(c x)`.
//
// # Safety
// `out` must be valid for writes.
enum TsStatus ts_x0(double c, double n, double *out);

// # Safety
// `out` must be valid for writes.
enum TsStatus ts_a2_threshold(uint64_t g, uint64_t q0, uint64_t e_lambda, uint64_t *out);

// # Safety
// `out` must be valid for writes.
enum TsStatus ts_smallest_prime_residue(uint64_t m, uint64_t ell, uint64_t *out);

// Kronecker symbol `(a/n)`; total, never fails.
int32_t ts_kronecker(int64_t a, uint64_t n);

// Whether `ell` lies in `N'(K)` for `K` of discriminant `disc`.
//
// # Safety
// `out` must be valid for writes.
enum TsStatus ts_nprime_member(uint64_t ell, int64_t disc, bool *out);

// Runs the sieve. `n_k = 0` selects the rational base.
//
// # Safety
// `out` must be valid for writes; the handle is released with
// [`ts_analysis_free`].
enum TsStatus ts_analysis_new(uint64_t g, uint64_t n_k, bool semistable, struct TsAnalysis **out);

// # Safety
// `a` must be null or a live handle from [`ts_analysis_new`].
void ts_analysis_free(struct TsAnalysis *a);

// Number of surviving `(profile, m_Q)` pairs; 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
size_t ts_analysis_survivor_count(const struct TsAnalysis *a);

// Number of profiles that reached the `m_Q` stage.
//
// # Safety
// `a` must be null or a live handle.
size_t ts_analysis_exception_count(const struct TsAnalysis *a);

// Fields of survivor `index`. The congruence is `ell ≡ residue (mod modulus)`.
//
// # Safety
// `a` must be a live handle; each out pointer must be valid for writes.
enum TsStatus ts_analysis_survivor(const struct TsAnalysis *a,
                                   size_t index,
                                   uint64_t *e,
                                   uint64_t *m_q,
                                   uint64_t *modulus,
                                   uint64_t *residue);

// Plain-text report; free with [`ts_string_free`].
//
// # Safety
// `a` must be a live handle; `out` must be valid for writes.
enum TsStatus ts_analysis_render(const struct TsAnalysis *a, char **out);

// Builds a polynomial from `len` coefficients, highest degree first; the
// leading one must be 1.
//
// # Safety
// `coeffs` must point to `len` readable values; `out` must be valid for
// writes.
enum TsStatus ts_poly_new(const int64_t *coeffs, size_t len, struct TsPolynomial **out);

// # Safety
// `p` must be null or a live handle.
void ts_poly_free(struct TsPolynomial *p);

// # Safety
// `p` must be null or a live handle.
size_t ts_poly_degree(const struct TsPolynomial *p);

// Coefficient of `T^i`. Fails with `RANGE` if `i` exceeds the degree or the
// value does not fit in 64 bits.
//
// # Safety
// `p` must be a live handle; `out` must be valid for writes.
enum TsStatus ts_poly_coeff(const struct TsPolynomial *p, size_t i, int64_t *out);

// Characteristic polynomial of the `e`-th power of a root.
//
// # Safety
// `p` must be a live handle; `out` must be valid for writes.
enum TsStatus ts_poly_power_charpoly(const struct TsPolynomial *p,
                                     uint64_t e,
                                     struct TsPolynomial **out);

// # Safety
// `p` must be a live handle; `out` must be valid for writes.
enum TsStatus ts_poly_is_weil(const struct TsPolynomial *p, uint64_t q, bool *out);

// # Safety
// `p` must be a live handle; `out` must be valid for writes.
enum TsStatus ts_poly_to_string(const struct TsPolynomial *p, char **out);

// Runs the command line with `argc` arguments (the program name first) and
// returns its standard output; the exit code goes to `code`.
//
// # Safety
// `argv` must hold `argc` valid NUL-terminated strings; `code` and `out`
// must be valid for writes.
enum TsStatus ts_run(size_t argc, const char *const *argv, int32_t *code, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORSIEVE_H */
