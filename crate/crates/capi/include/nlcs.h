#ifndef NLCS_H
#define NLCS_H

/* Generated by cbindgen from nlcs-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum NlcsStatus {
  NLCS_STATUS_OK = 0,
  NLCS_STATUS_NULL_POINTER = 1,
  NLCS_STATUS_INVALID_UTF8 = 2,
  NLCS_STATUS_PARSE_ERROR = 3,
  NLCS_STATUS_DOMAIN_ERROR = 4,
  NLCS_STATUS_DIVERGENCE = 5,
  NLCS_STATUS_TRUNCATION = 6,
  NLCS_STATUS_SINGULARITY = 7,
  NLCS_STATUS_DEGENERATE = 8,
  NLCS_STATUS_DIMENSION_MISMATCH = 9,
} NlcsStatus;

/**
 * Opaque family handle.
 */
typedef struct NlcsFamily NlcsFamily;

/**
 * Opaque state handle.
 */
typedef struct NlcsState NlcsState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent error on this thread. The pointer stays valid
 * until the next failing call on the same thread; never free it.
 */
const char *nlcs_last_error_message(void);

/**
 * Parse a family from its text form, e.g. "poschl_teller(nu=3)" or
 * "dual(bg(kappa=1.5))". On success writes a heap handle to `out`;
 * release it with `nlcs_family_free`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_parse(const char *spec, struct NlcsFamily **out);

/**
 * Release a family handle. NULL is ignored.
 *
 * # Safety
 * `family` must come from this API and not be used afterwards.
 */
void nlcs_family_free(struct NlcsFamily *family);

/**
 * Dual family with weights μ(n) = (n!)²/ρ(n); duality is an involution.
 *
 * # Safety
 * `family` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_dual(const struct NlcsFamily *family, struct NlcsFamily **out);

/**
 * Canonical text form of the family; free with `nlcs_string_free`.
 *
 * # Safety
 * `family` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_text(const struct NlcsFamily *family, char **out);

/**
 * ρ(n), normalized so that ρ(0) = 1.
 *
 * # Safety
 * `family` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_weight(const struct NlcsFamily *family, uint32_t n, double *out);

/**
 * e_n = ρ(n)/ρ(n−1), with e_0 = 0.
 *
 * # Safety
 * `family` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_spectrum(const struct NlcsFamily *family, uint32_t n, double *out);

/**
 * Nonlinearity f(n) = √(e_n/n) for n ≥ 1.
 *
 * # Safety
 * `family` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_nonlinearity(const struct NlcsFamily *family, uint32_t n, double *out);

/**
 * Convergence radius of the state label (lim e_n); +inf for whole-plane
 * families.
 *
 * # Safety
 * `family` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_family_radius(const struct NlcsFamily *family, double *out);

/**
 * Hilbert-space dimension, or -1 when infinite.
 *
 * # Safety
 * `family` must be a valid handle.
 */
int64_t nlcs_family_dimension(const struct NlcsFamily *family);

/**
 * Build the normalized state |z,α⟩. Pass `alpha` as NULL to omit the
 * stabilization phases. `trunc_tol` ≤ 0 selects the default 1e-12;
 * `max_n` = 0 selects the default cap 512.
 *
 * # Safety
 * `family` must be a valid handle; `alpha` NULL or valid; `out` valid.
 */
enum NlcsStatus nlcs_state_build(const struct NlcsFamily *family,
                                 double z_re,
                                 double z_im,
                                 const double *alpha,
                                 double trunc_tol,
                                 uintptr_t max_n,
                                 struct NlcsState **out);

/**
 * Release a state handle. NULL is ignored.
 *
 * # Safety
 * `state` must come from this API and not be used afterwards.
 */
void nlcs_state_free(struct NlcsState *state);

/**
 * Number of stored coefficients (truncation N + 1).
 *
 * # Safety
 * `state` must be a valid handle.
 */
uintptr_t nlcs_state_len(const struct NlcsState *state);

/**
 * Coefficient c_n of the expansion.
 *
 * # Safety
 * `state` must be a valid handle; `re` and `im` valid pointers.
 */
enum NlcsStatus nlcs_state_coefficient(const struct NlcsState *state,
                                       uintptr_t n,
                                       double *re,
                                       double *im);

/**
 * Estimated probability mass beyond the truncation.
 *
 * # Safety
 * `state` must be a valid handle.
 */
double nlcs_state_tail_mass(const struct NlcsState *state);

/**
 * Photon statistics: mean, variance and Mandel Q.
 *
 * # Safety
 * `state` must be a valid handle; out-pointers valid.
 */
enum NlcsStatus nlcs_state_stats(const struct NlcsState *state,
                                 double *mean,
                                 double *variance,
                                 double *mandel_q);

/**
 * ⟨s1|s2⟩ over the union truncation.
 *
 * # Safety
 * Both handles must be valid; out-pointers valid.
 */
enum NlcsStatus nlcs_state_overlap(const struct NlcsState *s1,
                                   const struct NlcsState *s2,
                                   double *re,
                                   double *im);

/**
 * Serialize the state to its documented JSON form; free the string with
 * `nlcs_string_free`.
 *
 * # Safety
 * `state` must be a valid handle and `out` a valid pointer.
 */
enum NlcsStatus nlcs_state_to_json(const struct NlcsState *state, char **out);

/**
 * Free a string returned by this API. NULL is ignored.
 *
 * # Safety
 * `s` must come from this API and not be used afterwards.
 */
void nlcs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLCS_H */
