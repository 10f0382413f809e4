#ifndef LND_H
#define LND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Binary operation selector for [`lnd_poly_arith`].
typedef enum LndOp {
  LND_OP_ADD = 0,
  LND_OP_SUB = 1,
  LND_OP_MUL = 2,
  // Exact division; fails with `Math` when the quotient is not a polynomial.
  LND_OP_DIV = 3,
} LndOp;

// Result code of every fallible call.
typedef enum LndStatus {
  LND_STATUS_OK = 0,
  LND_STATUS_NULL_POINTER = 1,
  LND_STATUS_INVALID_UTF8 = 2,
  LND_STATUS_PARSE = 3,
  LND_STATUS_CONTEXT_MISMATCH = 4,
  LND_STATUS_INVALID_INPUT = 5,
  LND_STATUS_MATH = 6,
  LND_STATUS_BUDGET_EXHAUSTED = 7,
  LND_STATUS_CAP_EXCEEDED = 8,
  LND_STATUS_JOB = 9,
  LND_STATUS_PANIC = 10,
} LndStatus;

typedef struct LndContext LndContext;

typedef struct LndDerivation LndDerivation;

typedef struct LndPoly LndPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *lnd_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void lnd_string_free(char *s);

// Creates a context. Each argument is a comma-separated list; `coefficients`
// and `relations` may be null.
//
// # Safety
// String arguments must be null or nul-terminated; `out` must be writable.
enum LndStatus lnd_context_new(const char *coefficients,
                               const char *variables,
                               const char *relations,
                               struct LndContext **out);

// # Safety
// `ctx` must be null or a handle from [`lnd_context_new`].
void lnd_context_free(struct LndContext *ctx);

// # Safety
// `ctx` must be a live context, `src` nul-terminated, `out` writable.
enum LndStatus lnd_poly_parse(const struct LndContext *ctx, const char *src, struct LndPoly **out);

// # Safety
// `p` must be null or a handle returned by this library.
void lnd_poly_free(struct LndPoly *p);

// Canonical text of a polynomial.
//
// # Safety
// `p` must be a live polynomial and `out` writable.
enum LndStatus lnd_poly_to_string(const struct LndPoly *p, char **out);

// # Safety
// `a` and `b` must be live polynomials and `out` writable.
enum LndStatus lnd_poly_arith(enum LndOp op,
                              const struct LndPoly *a,
                              const struct LndPoly *b,
                              struct LndPoly **out);

// # Safety
// `a` and `b` must be live polynomials and `out` writable.
enum LndStatus lnd_poly_equal(const struct LndPoly *a, const struct LndPoly *b, bool *out);

// Derivation from parallel arrays of variable names and image strings.
//
// # Safety
// `vars` and `images` must point to `n` nul-terminated strings each.
enum LndStatus lnd_derivation_new(const struct LndContext *ctx,
                                  const char *const *vars,
                                  const char *const *images,
                                  size_t n,
                                  struct LndDerivation **out);

// # Safety
// `d` must be null or a handle from [`lnd_derivation_new`].
void lnd_derivation_free(struct LndDerivation *d);

// # Safety
// `d` and `p` must be live handles and `out` writable.
enum LndStatus lnd_derivation_apply(const struct LndDerivation *d,
                                    const struct LndPoly *p,
                                    struct LndPoly **out);

// Least `n` with `D^(n+1) p = 0`; `CapExceeded` when `n` would exceed `cap`.
//
// # Safety
// `d` and `p` must be live handles and `out` writable.
enum LndStatus lnd_derivation_nilpotency_index(const struct LndDerivation *d,
                                               const struct LndPoly *p,
                                               uint32_t cap,
                                               uint32_t *out);

// Whether `p` lies in the ideal generated by `n` polynomials.
//
// # Safety
// `gens` must point to `n` live polynomial handles; `out` must be writable.
enum LndStatus lnd_ideal_membership(const struct LndPoly *p,
                                    const struct LndPoly *const *gens,
                                    size_t n,
                                    bool *out);

// Runs a job given as JSON text and returns the JSON report. A job whose
// checks fail still returns `Ok`; `overall` tells the verdict.
//
// # Safety
// `job_json` must be nul-terminated; `report` and `overall` writable.
enum LndStatus lnd_run_job_json(const char *job_json, char **report, bool *overall);

// Runs the built-in corpus, or only the job named `filter` when non-null.
//
// # Safety
// `filter` must be null or nul-terminated; `report` and `overall` writable.
enum LndStatus lnd_run_corpus_json(const char *filter, char **report, bool *overall);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LND_H */
