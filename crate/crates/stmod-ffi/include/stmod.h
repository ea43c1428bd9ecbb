#ifndef STMOD_H
#define STMOD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum {
  /**
   * Success.
   */
  STMOD_STATUS_OK = 0,
  /**
   * Invalid argument (bad modulus, malformed JSON, out-of-range bound).
   */
  STMOD_STATUS_INVALID = 1,
  /**
   * A mathematical verification failed or a search found nothing.
   */
  STMOD_STATUS_MATH = 2,
  /**
   * A required pointer argument was NULL.
   */
  STMOD_STATUS_NULL_POINTER = 3,
  /**
   * An internal panic was caught at the boundary.
   */
  STMOD_STATUS_PANIC = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  STMOD_STATUS_UTF8 = 5,
} StmodStatus;

/**
 * Opaque handle to a group algebra `k[X_1..X_r]/(X_i^{e_i})`.
 */
typedef struct StmodAlgebra StmodAlgebra;

/**
 * Opaque handle to a finite-dimensional module over a group algebra.
 */
typedef struct StmodModule StmodModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never NULL; the
 * pointer stays valid until the next failing call on the same thread.
 */
const char *stmod_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been produced by this library and not freed before.
 */
void stmod_string_free(char *s);

/**
 * Builds the algebra with the given prime and generator exponents.
 *
 * # Safety
 * `exponents` must point to `len` readable `uint32_t`s; `out` must be a
 * valid writable pointer.
 */
StmodStatus stmod_algebra_new(uint32_t p,
                              const uint32_t *exponents,
                              size_t len,
                              StmodAlgebra **out);

/**
 * # Safety
 * `handle` must come from `stmod_algebra_new` and not be freed twice.
 */
void stmod_algebra_free(StmodAlgebra *handle);

/**
 * Dimension of the algebra, 0 on a NULL handle.
 *
 * # Safety
 * `handle` must be valid or NULL.
 */
size_t stmod_algebra_dim(const StmodAlgebra *handle);

/**
 * The one-dimensional trivial module.
 *
 * # Safety
 * Pointers must be valid.
 */
StmodStatus stmod_module_trivial(const StmodAlgebra *algebra, StmodModule **out);

/**
 * The regular module on the monomial basis.
 *
 * # Safety
 * Pointers must be valid.
 */
StmodStatus stmod_module_regular(const StmodAlgebra *algebra, StmodModule **out);

/**
 * Parses a module fixture (`{"algebra":...,"dim":...,"actions":[...]}`);
 * the invariants are re-verified before the handle is produced.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be valid.
 */
StmodStatus stmod_module_from_json(const char *json, StmodModule **out);

/**
 * Serializes a module to its JSON fixture form.
 *
 * # Safety
 * Pointers must be valid; free the string with `stmod_string_free`.
 */
StmodStatus stmod_module_to_json(const StmodModule *module, char **out);

/**
 * # Safety
 * `handle` must come from this library and not be freed twice.
 */
void stmod_module_free(StmodModule *handle);

/**
 * Dimension of the module, 0 on a NULL handle.
 *
 * # Safety
 * `handle` must be valid or NULL.
 */
size_t stmod_module_dim(const StmodModule *handle);

/**
 * Number of free direct summands (the rank of the socle action).
 *
 * # Safety
 * `handle` must be valid or NULL.
 */
size_t stmod_module_free_rank(const StmodModule *handle);

/**
 * # Safety
 * `handle` must be valid or NULL.
 */
bool stmod_module_is_projective(const StmodModule *handle);

/**
 * Iterated syzygy `Ω^n` (negative `n` for cosyzygies, 0 for the
 * projective-free core).
 *
 * # Safety
 * Pointers must be valid.
 */
StmodStatus stmod_module_omega(const StmodModule *module, int64_t n, StmodModule **out);

/**
 * Dimension of the stable hom space `Hom(M, N) / PHom(M, N)`.
 *
 * # Safety
 * Pointers must be valid.
 */
StmodStatus stmod_stable_hom_dim(const StmodModule *source, const StmodModule *target, size_t *out);

/**
 * Endomorphism ring table of the trivial module in degrees `0..-bound`,
 * serialized as JSON.
 *
 * # Safety
 * Pointers must be valid; free the string with `stmod_string_free`.
 */
StmodStatus stmod_endo_table_json(const StmodAlgebra *h, size_t bound, char **out);

/**
 * Pi-point support report of a module over an elementary abelian algebra,
 * serialized as JSON; `max_degree` selects the extension-field point set
 * (1 or 2).
 *
 * # Safety
 * Pointers must be valid; free the string with `stmod_string_free`.
 */
StmodStatus stmod_support_report_json(const StmodModule *module, uint32_t max_degree, char **out);

/**
 * Verifies exactness of the canonical sequence for `H` with the given
 * exponents inside `G = H x C_p`. Writes the verdict to `pass`.
 *
 * # Safety
 * `h_exponents` must point to `len` readable values; `pass` must be valid.
 */
StmodStatus stmod_verify_canon_seq(uint32_t p,
                                   const uint32_t *h_exponents,
                                   size_t len,
                                   size_t n,
                                   bool *pass);

/**
 * Dimension of both sides of the identification `Ω^{-2n}(k) ≅ N(P_*, n)`
 * over the rank-two elementary abelian group; fails with a math status if
 * no bijective hom is found.
 *
 * # Safety
 * `dim_out` must be valid.
 */
StmodStatus stmod_rank2_iso_dim(uint32_t p, size_t n, size_t *dim_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STMOD_H */
