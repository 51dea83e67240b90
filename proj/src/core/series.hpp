#pragma once

#include <vector>

#include "core/expr.hpp"

namespace symapprox {

// Truncated power series Σ coeffs[k]·param^k + O(param^{order+1}).
// Coefficients are expressions free of the expansion parameter.
struct Series {
  Expr param;
  int order = 0;
  std::vector<Expr> coeffs;  // size order + 1

  Expr coeff(int k) const { return k <= order ? coeffs[k] : zero(); }
};

Series series_const(const Expr& param, const Expr& value, int order);

// Σ coeffs[k]·param^k as a plain expression.
Expr series_to_expr(const Series& s);

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_neg(const Series& a);
Series series_scale(const Series& a, const Expr& c);  // c free of param
Series series_mul(const Series& a, const Series& b);

// Reciprocal; throws PoleAtCenter when the constant term vanishes (or is
// probably zero under the numeric probe).
Series series_invert(const Series& a);
Series series_div(const Series& a, const Series& b);

Series series_pow_int(const Series& a, long n);
// a^q for rational q via the binomial series; needs a nonzero constant term.
Series series_pow_rational(const Series& a, const mpq_class& q);

Series series_exp(const Series& a);
Series series_sin(const Series& a);
Series series_cos(const Series& a);
Series series_log(const Series& a);

// Taylor expansion of e around `center` in symbol s, truncated at `order`.
// Works by series arithmetic over the expression structure, so it covers
// sums, products, integer/rational/symbolic powers, exp/sin/cos/log and any
// subexpression free of s.  Throws PoleAtCenter when a denominator (or log
// argument, or fractional-power base) vanishes at the center.
Series taylor(const Expr& e, const Expr& s, const Expr& center, int order);

// Rational approximant num/den with deg num <= m, deg den <= n, den(0) = 1,
// whose expansion matches the source series through order m + n.
struct PadeApproximant {
  Expr param;
  Expr num;
  Expr den;

  Expr as_expr() const;
};

// Throws SingularPade when the denominator system is degenerate; records
// symbolic pivots in *genericity when given.
PadeApproximant pade(const Series& s, int m, int n,
                     std::vector<Expr>* genericity = nullptr);

}  // namespace symapprox
