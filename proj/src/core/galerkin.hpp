#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/linalg.hpp"
#include "core/report.hpp"

namespace symapprox {

// User-supplied inner products defining the weak problem.  Each form takes
// concrete expressions (basis functions of the space variable) and returns
// an expression that may contain Integral nodes; the assembler resolves
// them exactly and raises UnresolvedInnerProduct when it cannot.
struct InnerProductSpec {
  std::function<Expr(const Expr& u, const Expr& v)> a_form;  // stiffness
  std::function<Expr(const Expr& v)> l_form;                 // load
  std::function<Expr(const Expr& u, const Expr& v)> m_form;  // mass (optional)
  Expr lo, hi;  // domain, used by the convenience builders
};

// Convenience builder for the common strong form -(p·u')' + q·u = f on
// (lo, hi) with homogeneous Dirichlet conditions:
//   a(u,v) = ∫ (p·u'·v' + q·u·v),  l(v) = ∫ f·v,  m(u,v) = ∫ u·v.
InnerProductSpec elliptic_weak_form(const Expr& p, const Expr& q, const Expr& f,
                                    const Expr& var, const Expr& lo,
                                    const Expr& hi);

// Bases on (lo, hi), each function vanishing at both endpoints.
enum class BasisKind { Sine, PolyBubble, Hat };

struct Basis {
  BasisKind kind;
  Expr var;
  std::vector<Expr> functions;
};

Basis sine_basis(int n, const Expr& var, const Expr& lo, const Expr& hi);
Basis poly_bubble_basis(int n, const Expr& var, const Expr& lo, const Expr& hi);
// Piecewise-linear hats on the uniform interior grid (n nodes).
Basis hat_basis(int n, const Expr& var, const Expr& lo, const Expr& hi);

struct GalerkinSolution {
  Expr approximant;          // Σ c_i w_i
  std::vector<Expr> coeffs;  // c
  Matrix stiffness;          // K_{ji} = a(w_i, w_j)
  Vector load;               // b_j = l(w_j)
  SolveReport report;
};

// Solve the projected problem K c = b exactly.
GalerkinSolution galerkin_elliptic(const InnerProductSpec& ip, const Basis& basis);

struct SpectralSolution {
  Expr char_poly;  // det(K - lambda·M) in the symbol `lambda_name`
  std::string lambda_name;
  Matrix stiffness;
  Matrix mass;
  std::vector<double> eigenvalues;  // ascending, only when entries are numeric
  SolveReport report;
};

// Projected eigenproblem K c = lambda·M c; exact eigenvalues for
// characteristic degree <= 2 via the quadratic formula (kept in
// SpectralSolution::char_poly roots), numeric root isolation otherwise.
SpectralSolution galerkin_spectral(const InnerProductSpec& ip, const Basis& basis,
                                   const std::string& lambda_name = "lambda");

// Exact symbolic roots of the characteristic polynomial when its degree is
// <= 2 and the discriminant folds to a perfect square; nullopt otherwise.
std::optional<std::vector<Expr>> spectral_exact_eigenvalues(
    const SpectralSolution& s);

struct EvolutionSystem {
  Matrix stiffness;           // K
  Matrix mass;                // M in M·c'(t) = -K·c(t)
  Vector initial_projection;  // c(0) from M·c(0) = <u0, w_j>
  SolveReport report;
};

// Reduce u_t = -A u to the coefficient system M·c' = -K·c with the initial
// state projected onto the basis (u0 may be empty for a zero start).
EvolutionSystem galerkin_evolution(const InnerProductSpec& ip, const Basis& basis,
                                   const Expr& u0);

}  // namespace symapprox
