#ifndef SUBPROFILE_H
#define SUBPROFILE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_UTF8 = 2,
  SP_STATUS_PARSE = 3,
  SP_STATUS_INVALID_ARGUMENT = 4,
  SP_STATUS_SIZE_MISMATCH = 5,
  SP_STATUS_UNREALIZABLE = 6,
  SP_STATUS_BUDGET = 7,
  SP_STATUS_DEGREE_CAP = 8,
  SP_STATUS_POLE = 9,
  SP_STATUS_DIVISION_BY_ZERO = 10,
  SP_STATUS_NOT_POLYNOMIAL = 11,
  SP_STATUS_PANIC = 12,
} SpStatus;

// A square matrix over a prime field.
typedef struct SpMatrix SpMatrix;

// A rational function in `t` with rational coefficients.
typedef struct SpRatFunc SpRatFunc;

// A homogeneous symmetric function.
typedef struct SpSymFunc SpSymFunc;

// A similarity class type.
typedef struct SpType SpType;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. Valid until the next call.
const char *sp_last_error_message(void);

// # Safety
// `s` must come from this library or be null.
void sp_string_free(char *s);

// Parses `{"blocks": [{"d": 1, "lambda": [2, 1]}, ...]}`.
//
// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum SpStatus sp_type_parse(const char *json, struct SpType **out);

// # Safety
// `t` must come from this library or be null.
void sp_type_free(struct SpType *t);

// Size `n` of the type, or 0 for a null handle.
//
// # Safety
// `t` must be a valid handle or null.
size_t sp_type_size(const struct SpType *t);

// # Safety
// `t` must be a valid handle and `out` a valid pointer.
enum SpStatus sp_type_to_json(const struct SpType *t, char **out);

// Parses `{"p": 2, "n": 2, "entries": [[0, 1], [0, 0]]}`.
//
// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum SpStatus sp_matrix_parse(const char *json, struct SpMatrix **out);

// # Safety
// `m` must come from this library or be null.
void sp_matrix_free(struct SpMatrix *m);

// Similarity class type of a matrix.
//
// # Safety
// `m` must be a valid handle and `out` a valid pointer.
enum SpStatus sp_matrix_type(const struct SpMatrix *m, struct SpType **out);

// `σ(μ, τ)` as a polynomial in `t`.
//
// # Safety
// `mu` must point to `len` entries (or be null when `len` is 0).
enum SpStatus sp_sigma(const struct SpType *t,
                       const size_t *mu,
                       size_t len,
                       struct SpRatFunc **out);

// Number of subspaces with partial profile `rho`.
//
// # Safety
// `rho` must point to `len` entries.
enum SpStatus sp_pi_partial(const struct SpType *t,
                            const size_t *rho,
                            size_t len,
                            struct SpRatFunc **out);

// # Safety
// Handles and out pointers must be valid.
enum SpStatus sp_anti_invariant(const struct SpType *t,
                                size_t m,
                                size_t fold,
                                struct SpRatFunc **out);

// # Safety
// Handles and out pointers must be valid.
enum SpStatus sp_krylov_prob(const struct SpType *t, size_t k, size_t l, struct SpRatFunc **out);

// The invariant-flag generating function of a type.
//
// # Safety
// Handles and out pointers must be valid.
enum SpStatus sp_flag_gf(const struct SpType *t, struct SpSymFunc **out);

// Exhaustive count of subspaces with profile `mu` under `m`.
//
// # Safety
// `mu` must point to `len` entries; `out` must be valid.
enum SpStatus sp_sigma_bruteforce(const struct SpMatrix *m,
                                  const size_t *mu,
                                  size_t len,
                                  uint64_t *out);

// Canonical human form, e.g. `1 + t + 2*t^2`.
//
// # Safety
// Handles and out pointers must be valid.
enum SpStatus sp_ratfunc_to_string(const struct SpRatFunc *r, char **out);

// `{"num": [...], "den": [...]}` with coefficients as rational strings.
//
// # Safety
// Handles and out pointers must be valid.
enum SpStatus sp_ratfunc_to_json(const struct SpRatFunc *r, char **out);

// Exact value at `t = num/den`, written as `"a"` or `"a/b"`.
//
// # Safety
// Handles and out pointers must be valid.
enum SpStatus sp_ratfunc_eval(const struct SpRatFunc *r, int64_t num, int64_t den, char **out);

// # Safety
// `r` must come from this library or be null.
void sp_ratfunc_free(struct SpRatFunc *r);

// JSON expansion in the basis named by `basis` (`s`, `m`, `e`, `h`, `p`,
// `P`, `H`, `Hmod`, `W`, `Wdual`).
//
// # Safety
// Handles, strings and out pointers must be valid.
enum SpStatus sp_symfunc_to_json(const struct SpSymFunc *f, const char *basis, char **out);

// # Safety
// `f` must come from this library or be null.
void sp_symfunc_free(struct SpSymFunc *f);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBPROFILE_H */
