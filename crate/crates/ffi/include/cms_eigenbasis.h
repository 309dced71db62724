#ifndef CMS_EIGENBASIS_H
#define CMS_EIGENBASIS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
enum CmsStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  CMS_STATUS_OK = 0,
  CMS_STATUS_NULL_POINTER = 1,
  CMS_STATUS_INVALID_UTF8 = 2,
  CMS_STATUS_PARSE = 3,
  CMS_STATUS_INVALID_ARGUMENT = 4,
  CMS_STATUS_DEGENERATE = 5,
  CMS_STATUS_NOT_IN_HOOK = 6,
  CMS_STATUS_MATH = 7,
  CMS_STATUS_PANIC = 8,
};
#ifndef __cplusplus
typedef int32_t CmsStatus;
#endif // __cplusplus

/**
 * Opaque polynomial in ℚ(θ)[x, x̃].
 */
typedef struct CmsPoly CmsPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Super Jack polynomial SP_λ on n + ñ variables. `lambda` is a
 * comma-separated partition such as "2,1".
 *
 * # Safety
 * `lambda` must be a valid C string and `out` a valid pointer.
 */
CmsStatus cms_superjack(const char *lambda, size_t n, size_t nt, struct CmsPoly **out);

/**
 * f_a^{(m̄)} on the space (n, ñ); `a` has m + m̃ entries.
 *
 * # Safety
 * `a` must point to `len` integers (or be null when `len` is 0) and `out`
 * must be a valid pointer.
 */
CmsStatus cms_fpoly(const int64_t *a,
                    size_t len,
                    size_t m,
                    size_t mt,
                    size_t n,
                    size_t nt,
                    struct CmsPoly **out);

/**
 * Eigenfunction P_λ^{(m̄)} of ℒ. `spec` is a preset name (trig, hermite,
 * laguerre, jacobi, bessel) or raw coefficients such as "a2=1,b1=-1/2".
 * When `eigenvalue` is non-null it receives the eigenvalue as text.
 *
 * # Safety
 * `spec` and `lambda` must be valid C strings; `out` must be a valid
 * pointer and `eigenvalue` null or valid.
 */
CmsStatus cms_eigenfunction(const char *spec,
                            const char *lambda,
                            size_t n,
                            size_t nt,
                            size_t m,
                            size_t mt,
                            struct CmsPoly **out,
                            char **eigenvalue);

/**
 * JSON term list {"nvars", "terms": [{"exp", "coeff"}]}.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
CmsStatus cms_poly_to_json(const struct CmsPoly *p, char **out);

/**
 * Text rendering with variables x1.., xt1...
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
CmsStatus cms_poly_to_string(const struct CmsPoly *p, char **out);

/**
 * Value at a rational point and rational θ. `point` holds `len` strings
 * such as "1/2", one per variable; the result is written as "p/q".
 *
 * # Safety
 * `p` must be a live handle, `point` must point to `len` valid C strings,
 * `theta` must be a valid C string and `out` a valid pointer.
 */
CmsStatus cms_poly_eval(const struct CmsPoly *p,
                        const char *const *point,
                        size_t len,
                        const char *theta,
                        char **out);

/**
 * Number of variables of a polynomial, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t cms_poly_nvars(const struct CmsPoly *p);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void cms_poly_free(struct CmsPoly *p);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void cms_string_free(char *s);

/**
 * Message of the last failure on this thread as a new string, or null
 * if the last call succeeded. Free with [`cms_string_free`].
 */
char *cms_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CMS_EIGENBASIS_H */
