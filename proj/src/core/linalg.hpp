#pragma once

#include <string>
#include <vector>

#include "core/expr.hpp"

namespace symapprox {

// Dense symbolic matrix in row-major order.
using Matrix = std::vector<std::vector<Expr>>;
using Vector = std::vector<Expr>;

// Solve A x = b by Gaussian elimination over symbolic entries.
//
// Pivot selection consults the zero decision procedure: entries proved zero
// are skipped, entries proved nonzero are preferred, and an entry that cannot
// be decided raises AmbiguousPivot (the caller must supply more structure or
// numbers).  Pivots that are nonzero only generically (nonzero as expressions
// but vanishing for special parameter values) are recorded in *genericity so
// the caller can report the assumptions behind the solution.
//
// Throws SingularSystem when the system has no unique solution.
Vector linear_solve_symbolic(const Matrix& a, const Vector& b,
                             std::vector<Expr>* genericity = nullptr);

// Determinant by the same elimination (cofactor expansion for n <= 3).
Expr det_symbolic(const Matrix& a, std::vector<Expr>* genericity = nullptr);

}  // namespace symapprox
