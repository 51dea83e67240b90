#pragma once

#include "core/expr.hpp"
#include "core/report.hpp"
#include "core/series.hpp"

namespace symapprox {

// Exact derivative of order >= 1 with respect to a symbol.  Derivatives of
// unknown functions applied directly to the variable stay held as Deriv
// nodes; integrals differentiate by the Leibniz rule.
// Throws UnsupportedDerivative when the chain rule would have to pass
// through a composed unknown argument such as u(t - 1).
Expr diff(const Expr& e, const Expr& var, int order = 1);

// Antiderivative over the exp-trig-polynomial class: finite sums of
// coeff · x^k · exp(a·x + c) · {sin, cos}(b·x + d) with coeff, a, b, c, d
// free of x and integer k >= 0 (plus bare rational powers of x).  Terms are
// antidifferentiated by an undetermined-coefficient ansatz in the same class,
// with the linear coefficient system solved exactly; symbolic pivots become
// genericity notes in the report.
//
// There is no meaningful held form for an antiderivative, so this throws
// UnresolvedIntegral when any term falls outside the class or the
// coefficient system degenerates for special parameter values.  (The
// definite integrate() below returns a held Integral node instead.)
Expr integrate_indefinite(const Expr& e, const Expr& var,
                          SolveReport* report = nullptr);

// Definite integral: antidifferentiate, then evaluate at the bounds (which
// must be free of var).  Integrands containing piecewise factors with
// rational breakpoints take the subdivision path automatically when the
// bounds are rational.
Expr integrate(const Expr& e, const Expr& var, const Expr& lo, const Expr& hi,
               SolveReport* report = nullptr);

// Definite integral of a product of piecewise-polynomial and exp-trig
// factors over rational bounds: splits at the breakpoints, selects each
// piece by its midpoint, integrates the pieces, sums.
Expr integrate_piecewise(const Expr& e, const Expr& var, const Expr& lo,
                         const Expr& hi, SolveReport* report = nullptr);

// Replace every Integral node whose integrand no longer involves unknowns
// with its evaluated value (leaves the node held when integration fails).
Expr resolve_integrals(const Expr& e, SolveReport* report = nullptr);

}  // namespace symapprox
