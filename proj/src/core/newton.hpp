#pragma once

#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/galerkin.hpp"
#include "core/report.hpp"

namespace symapprox {

// Square system F(x) = 0 with a starting point.  Equations and starting
// values may carry free symbolic parameters; the linear solves then record
// the nonvanishing assumptions they pivot on.
struct AlgebraicSystem {
  std::vector<Expr> equations;
  std::vector<Expr> vars;
  std::vector<Expr> x0;
};

// Newton iteration x_{k+1} = x_k - J(x_k)^{-1} F(x_k), every step exact.
// Returns the iterates [x0, x1, ..., x_steps]; stops early when the residual
// vanishes identically.  Raises SingularSystem / AmbiguousPivot when a
// Jacobian solve degenerates.
std::vector<std::vector<Expr>> newton_algebraic(const AlgebraicSystem& sys,
                                                int steps,
                                                SolveReport* report = nullptr);

// Two-point problem F(u) = 0 on (lo, hi), u(lo) = bc_lo, u(hi) = bc_hi.
// `equation` is an expression in the unknown function (applied to `var`) and
// its derivatives; `u0` is the starting approximation, an expression in var.
struct BvpProblem {
  Expr equation;
  std::string unknown;
  Expr var;
  Expr lo, hi;
  Expr bc_lo, bc_hi;
  Expr u0;
};

// How each linearized correction problem is solved.
enum class LinearBackend {
  ClosedForm,  // constant-coefficient second-order problems, exact
  Galerkin,    // projection onto a boundary-respecting basis
};

struct NewtonOptions {
  LinearBackend backend = LinearBackend::ClosedForm;
  BasisKind basis = BasisKind::PolyBubble;  // Galerkin backend only
  int basis_n = 3;
};

struct NewtonResult {
  std::vector<Expr> iterates;  // [u0, u1, ..., u_steps]
  SolveReport report;
};

// Linearization of the residual around `un`: F(un) + F'(un)[h], returned as
// an expression in the unknown function named `correction` (whose zero set
// defines the next correction h).
Expr quasilinearize(const BvpProblem& p, const Expr& un,
                    const std::string& correction);

// Exact solution of the constant-coefficient linear two-point problem
//   c2·h'' + c1·h' + c0·h + g(x) = 0,  h(lo) = h_lo,  h(hi) = h_hi,
// with the equation given as an expression in the unknown function `h`.
// Homogeneous solutions come from the characteristic roots (distinct,
// double, or complex pair), the particular one from variation of
// parameters.  Raises LinearBackendUnsupported for anything outside that
// class (variable coefficients, order above two, unintegrable loads).
Expr solve_linear_bvp_closed(const Expr& equation, const std::string& unknown,
                             const Expr& var, const Expr& lo, const Expr& hi,
                             const Expr& h_lo, const Expr& h_hi,
                             SolveReport* report = nullptr);

// Quasilinearization loop: repeatedly linearize around the current iterate
// and add the solved correction.  Residual samples at the interval midpoint
// are recorded per step when the iterate evaluates numerically.
NewtonResult newton_functional(const BvpProblem& p, int steps,
                               const NewtonOptions& opts = {});

}  // namespace symapprox
