#pragma once

#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/report.hpp"

namespace symapprox {

// First-order initial value problem F(u, u', eps) = 0, u(t0) = u_init, with
// a small parameter eps entering polynomially.  The order-zero problem must
// be linear with constant coefficients: a1·u' + a0·u + (terms in t) = 0.
struct PerturbProblem {
  Expr equation;     // residual in the unknown function and eps
  std::string unknown;
  Expr var;          // time variable
  Expr eps;          // expansion symbol
  Expr t0;           // initial point
  Expr u_init;       // value at t0 (carried entirely by the order-0 term)
};

struct PerturbSolution {
  std::vector<Expr> coeffs;  // u_0(t), ..., u_N(t) with N = achieved_order
  Expr truncated;            // Σ eps^k · u_k
  int achieved_order = 0;
  SolveReport report;
};

// Regular expansion u = Σ eps^k·u_k(t): substitute, split by powers of eps,
// and solve the resulting cascade of linear problems u_k' + p·u_k = r_k
// exactly by the integrating factor.  An order whose integral stays
// unresolved truncates the series there (with a warning); secular growth
// t^m·sin/cos in a coefficient is flagged.  Raises NotRegular when the
// order-zero problem is not first-order linear with constant coefficients.
PerturbSolution perturb_solve_ode(const PerturbProblem& p, int order);

struct AlgebraicPerturbSolution {
  std::vector<Expr> coeffs;  // x_0, ..., x_order
  Expr truncated;            // Σ eps^k · x_k
  SolveReport report;
};

// Branch of f(x, eps) = 0 through the simple root x = root0 at eps = 0:
// coefficients come from the Taylor residual divided by f_x(root0, 0).
// Raises DegenerateRoot when that derivative vanishes.
AlgebraicPerturbSolution perturb_solve_algebraic(const Expr& f, const Expr& x,
                                                 const Expr& eps,
                                                 const Expr& root0, int order);

}  // namespace symapprox
