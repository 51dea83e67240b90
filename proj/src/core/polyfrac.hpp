#pragma once
#include <map>
#include <optional>
#include <vector>

#include "core/expr.hpp"

namespace symapprox {

// Expressions are normalized as quotients of generalized polynomials over
// "kernels": symbols plus opaque transcendental atoms (sin/cos/log
// applications, unresolved functions, held nodes).  exp is decomposed
// multiplicatively -- exp(2*k*t) contributes kernel exp(k*t) with exponent 2
// -- and symbolic powers decompose the same way, so r^(n+1) becomes
// kernel(r^n) * r.  Monomial exponents are arbitrary rationals.

using Monomial = std::map<int, mpq_class>;  // kernel id -> nonzero exponent

struct Poly {
  std::map<Monomial, mpq_class> terms;  // monomial -> nonzero coefficient

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
  }
  mpq_class constant_value() const {
    if (terms.empty()) return mpq_class(0);
    return terms.begin()->second;
  }
};

Poly poly_const(const mpq_class& c);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const mpq_class& c);
Poly poly_pow(const Poly& a, unsigned long n);

struct KernelTable {
  std::vector<Expr> kernels;
  std::map<Expr, int, ExprLess> index;
  int id(const Expr& k);
};

struct Fraction {
  Poly num, den;
};

// Normalize a canonical expression into num/den over a shared kernel table.
// Throws DomainError when a structural division by zero appears (0^-1).
Fraction to_fraction(const Expr& e, KernelTable& kt);

Expr poly_to_expr(const Poly& p, const KernelTable& kt);

// Primitive gcd of multivariate polynomials with non-negative integer
// exponents (recursive subresultant-style Euclid).  Returns a primitive
// polynomial with positive leading coefficient; gcd of anything with zero is
// the other argument made primitive.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact quotient if it exists (integer exponents only).
std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b);

// Fraction normalization: cancels the common monomial part, the rational
// content, and the polynomial gcd, then rebuilds an expression.
Expr simplify_quotient(Poly num, Poly den, const KernelTable& kt);

// Canonicalize and put over a common denominator with gcd cancellation.
// Falls back to plain canon() when the expression cannot be normalized.
Expr rational_simplify(const Expr& e);

// Three-valued zero decision.
//  - Zero: provably zero (fraction numerator vanishes, possibly after trig
//    linearization).
//  - NonZero: provably nonzero; `generic` marks "nonzero for generic
//    parameter values" (a nonconstant polynomial in independent kernels, or
//    numeric probing with comfortably large values).
//  - Unknown: no decision; `probable_zero` marks consistent numeric evidence
//    of vanishing (never upgraded to Zero).
enum class ZeroState { Zero, NonZero, Unknown };
struct ZeroResult {
  ZeroState state;
  bool generic = false;
  bool probable_zero = false;
};
ZeroResult is_zero(const Expr& e);

// Convenience: is_zero(a - b) decides Zero.
bool definitely_equal(const Expr& a, const Expr& b);

// Exact square root of an expression whose fraction form is a single
// monomial with a square coefficient and even kernel exponents on each side,
// e.g. (9/16)·pi^4 -> (3/4)·pi^2.  Nullopt when no such root exists.
std::optional<Expr> sqrt_exact(const Expr& e);

}  // namespace symapprox
