#ifndef SYMAPPROX_H
#define SYMAPPROX_H

/* C interface to the symbolic approximation engine.
 *
 * Expressions are immutable values behind opaque handles; every function
 * returning a sym_expr* hands the caller a new handle to release with
 * sym_free.  Returned strings are released with sym_free_string.
 *
 * On failure, pointer-returning calls yield NULL and integer-returning
 * calls a nonzero status; sym_last_status / sym_last_message describe the
 * error for the calling thread.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sym_expr sym_expr;

/* Engine status codes (stable integer values). */
typedef enum sym_status {
  SYM_OK = 0,
  SYM_PARSE_ERROR,
  SYM_INVALID_ARGUMENT,
  SYM_UNBOUND_SYMBOL,
  SYM_DOMAIN_ERROR,
  SYM_HELD_NODE,
  SYM_SUBSTITUTION_INTO_BOUND_VAR,
  SYM_NOT_POLYNOMIAL_IN_SYMBOL,
  SYM_UNSUPPORTED_DERIVATIVE,
  SYM_UNRESOLVED_INTEGRAL,
  SYM_POLE_AT_CENTER,
  SYM_REWRITE_BUDGET_EXCEEDED,
  SYM_SINGULAR_SYSTEM,
  SYM_AMBIGUOUS_PIVOT,
  SYM_NONLOCAL_DEPENDENCE,
  SYM_DEGENERATE_SEQUENCE,
  SYM_NO_CONVERGENCE,
  SYM_NOT_REGULAR,
  SYM_DEGENERATE_ROOT,
  SYM_SINGULAR_PADE,
  SYM_LINEAR_BACKEND_UNSUPPORTED,
  SYM_UNRESOLVED_INNER_PRODUCT,
  SYM_GENERICITY_VIOLATION,
  SYM_INTERNAL_ERROR
} sym_status;

const char* sym_version(void);

/* Last error on the calling thread (reset by every API call). */
int sym_last_status(void);
const char* sym_last_message(void);

/* ------------------------------------------------------------------ */
/* expressions                                                         */
/* ------------------------------------------------------------------ */

/* Infix grammar: + - * / ^, sin/cos/exp/log, D(u(t),t[,order]),
 * Int(f,x,a,b), pw(x, lo,hi,value, ...), exact rationals (1/3, 0.25). */
sym_expr* sym_parse(const char* text);
void sym_free(sym_expr* e);

char* sym_render(const sym_expr* e);        /* canonical plain infix */
char* sym_render_latex(const sym_expr* e);
void sym_free_string(char* s);

sym_expr* sym_add(const sym_expr* a, const sym_expr* b);
sym_expr* sym_sub(const sym_expr* a, const sym_expr* b);
sym_expr* sym_mul(const sym_expr* a, const sym_expr* b);
sym_expr* sym_div(const sym_expr* a, const sym_expr* b);

/* Normal form over a common denominator with gcd cancellation. */
sym_expr* sym_simplify(const sym_expr* e);

sym_expr* sym_diff(const sym_expr* e, const char* var, int order);

/* Exact definite integral; stays a held Int(...) node when the integrand
 * falls outside the supported class. */
sym_expr* sym_integrate(const sym_expr* e, const char* var, const sym_expr* lo,
                        const sym_expr* hi);

/* Replace a symbol by a value everywhere (capture-checked). */
sym_expr* sym_subst(const sym_expr* e, const char* symbol, const sym_expr* value);

/* Structural equality of canonical forms: 1 or 0. */
int sym_equal(const sym_expr* a, const sym_expr* b);

/* Exact zero decision: 1 zero, 0 nonzero, -1 undecided. */
int sym_is_zero(const sym_expr* e);

/* Numeric evaluation with the given symbol bindings ("pi" is built in).
 * Returns SYM_OK and writes *out, or an error status. */
int sym_eval(const sym_expr* e, const char* const* names, const double* values,
             size_t n, double* out);

/* ------------------------------------------------------------------ */
/* problem runner                                                      */
/* ------------------------------------------------------------------ */

/* Execute a problem document (the CLI file format).  format is "plain",
 * "latex" or "csv" (NULL means plain); samples is "lo:hi:n" or NULL;
 * reference is "rk4", "fd" or NULL; max_passes <= 0 selects the default.
 * On success *output (and *report, when non-NULL) receive malloc'd text.
 * Returns a process-style status: 0 ok, 2 parse/validation, 3 method
 * failure, 4 unresolved symbolic work. */
int sym_run_problem(const char* document, const char* format,
                    const char* samples, const char* reference, int allow_held,
                    int max_passes, char** output, char** report);

#ifdef __cplusplus
}
#endif

#endif /* SYMAPPROX_H */
