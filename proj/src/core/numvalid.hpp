#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/expr.hpp"

namespace symapprox {

// Numeric reference machinery.  Everything here depends only on expression
// evaluation, never on the symbolic solvers, so these routines can serve as
// independent oracles for the symbolic results.

// Classical fixed-step RK4 for u' = rhs(t, u).  Returns the (t, u) trajectory
// including the initial point; `params` binds any other symbols in rhs.
std::vector<std::pair<double, double>> rk4_ivp(
    const Expr& rhs, const std::string& tname, const std::string& uname,
    double u0, double t0, double t1, int steps,
    const std::map<std::string, double>& params = {});

// System variant: rows are [t, u_1, ..., u_n].
std::vector<std::vector<double>> rk4_system(
    const std::vector<Expr>& rhs, const std::string& tname,
    const std::vector<std::string>& unames, const std::vector<double>& u0,
    double t0, double t1, int steps,
    const std::map<std::string, double>& params = {});

// Dense finite-difference solve of the two-point boundary value problem
//   u'' = g(x, u, u'),  u(lo) = ua,  u(hi) = ub
// on grid_n interior points: central differences, damped Newton on the
// discrete system (numeric tridiagonal Jacobian), tolerance 1e-10.
// Returns (x, u) rows including the endpoints.
// Throws NoConvergence when Newton fails to reach the tolerance.
std::vector<std::pair<double, double>> fd_bvp(
    const Expr& g, const std::string& xname, const std::string& uname,
    const std::string& upname, double lo, double hi, double ua, double ub,
    int grid_n, const std::map<std::string, double>& params = {});

// Adaptive Simpson quadrature of e over [lo, hi] to the given tolerance.
double quad(const Expr& e, const std::string& var, double lo, double hi,
            double tol, const std::map<std::string, double>& params = {});

// Evaluate an expression numerically, resolving any Integral nodes by
// adaptive quadrature (nested integrals recurse).
double eval_with_quad(const Expr& e, const std::map<std::string, double>& bindings,
                      double tol = 1e-10);

// Evaluate e at each point (binding `var` to it); returns (point, value) rows.
std::vector<std::pair<double, double>> sample(
    const Expr& e, const std::string& var, const std::vector<double>& points,
    const std::map<std::string, double>& params = {});

// Bisection root of f on [lo, hi]; the endpoints must bracket a sign change.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol);

}  // namespace symapprox
