#pragma once

#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/report.hpp"

namespace symapprox {

// A fixed-point operator g -> body[unknown := g].  Two flavors:
//   - functional: `unknown` names an unknown function; applying the operator
//     substitutes g (an expression in var) as a function template, so
//     occurrences like u(tau) inside an integral pick up g(tau);
//   - scalar map (unknown empty): body is an expression in var and applying
//     the operator substitutes var := g directly.
struct OperatorDef {
  std::string unknown;  // empty for scalar maps
  Expr var;
  Expr body;
};

// One application, with integral resolution and simplification.
// Unresolved integrals are flagged in the report; when allow_held is false
// they raise UnresolvedIntegral instead.
Expr apply_operator(const OperatorDef& op, const Expr& g,
                    SolveReport* report = nullptr, bool allow_held = true);

// nth iterate op(op(...op(x0))); nest(op, x0, 0) = canon(x0).
Expr nest(const OperatorDef& op, const Expr& x0, int n,
          SolveReport* report = nullptr, bool allow_held = false);

// [x0, op(x0), ..., op^n(x0)]
std::vector<Expr> nest_list(const OperatorDef& op, const Expr& x0, int n,
                            SolveReport* report = nullptr,
                            bool allow_held = false);

// Aitken acceleration of three consecutive iterates:
//   (x_{n+2}·x_n − x_{n+1}²) / (x_{n+2} − 2·x_{n+1} + x_n)
// Exact on sequences of the form A + C·r^n.  Throws DegenerateSequence when
// the denominator vanishes (constant or arithmetic sequence).
Expr shanks(const Expr& xn, const Expr& xn1, const Expr& xn2);

// Accelerated fixed-point step: shanks of op^n(x0), op^{n+1}(x0), op^{n+2}(x0).
Expr steffensen(const OperatorDef& op, const Expr& x0, int n,
                SolveReport* report = nullptr);

// Fixed-point (Picard) reformulation of the linear-kernel IVP
//   u' + p·u = q(t, u(t)),   u(t0) = u0
// as u = exp(-p·(t - t0))·u0 + ∫_{t0}^{t} exp(-p·(t - tau))·q(tau, u(tau)) dtau.
// p must be free of the time variable.
OperatorDef picard_operator(const std::string& unknown, const Expr& t,
                            const Expr& p, const Expr& q, const Expr& t0,
                            const Expr& u0);

}  // namespace symapprox
