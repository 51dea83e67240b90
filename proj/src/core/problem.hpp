#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/galerkin.hpp"
#include "core/report.hpp"

namespace symapprox {

// Problem files are line-oriented `key: value` documents (UTF-8, `#`
// comments).  Keys:
//   symbols:    comma list of parameter symbols, each optionally marked
//               `generic` (documents a nonvanishing assumption)
//   unknown:    `u(t)` for a function unknown, `x` or `x, y` for scalars
//   equation:   expression, `=` allowed; repeatable for systems
//   initial:    `u(t0) = value`
//   boundary:   `u(lo) = value, u(hi) = value`
//   method:     fixedpoint | steffensen | newton | newton-bvp | perturb |
//               pade | galerkin-elliptic | galerkin-spectral |
//               galerkin-evolution | frechet
//   iterations: step count for the iterative methods
//   order:      expansion order (perturb, pade)
//   param:      method-specific: the linear-kernel coefficient (fixedpoint,
//               steffensen on functions), the small parameter (perturb,
//               pade), the eigenvalue name (galerkin-spectral), the
//               direction name (frechet)
//   basis:      sine | poly | hat  (Galerkin methods; selecting a basis on
//               newton-bvp switches the correction solve to the Galerkin
//               backend)
//   basis_n:    basis size
//   x0:         comma list, starting point for scalar iterations
//   u0:         starting / initial function (expression in the variable)
//   pade:       `m,n` degrees
enum class Method {
  FixedPoint,
  Steffensen,
  Newton,
  NewtonBvp,
  Perturb,
  Pade,
  GalerkinElliptic,
  GalerkinSpectral,
  GalerkinEvolution,
  Frechet,
};

struct Condition {
  Expr point;
  Expr value;
};

struct Problem {
  std::string unknown;                // function unknown name ("" for scalars)
  std::vector<Expr> scalar_unknowns;  // plain-symbol unknowns
  Expr var;                           // function argument / first scalar
  std::vector<Expr> equations;        // residuals (lhs - rhs); g for maps
  std::vector<Expr> map_rhs;          // rhs kept when the lhs is the bare unknown
  Method method = Method::FixedPoint;
  std::set<std::string> generic_symbols;

  std::optional<Condition> initial;
  std::vector<Condition> boundary;
  int iterations = -1;  // -1: per-method default (1; 0 for steffensen)
  int order = 1;
  std::string param;
  BasisKind basis = BasisKind::Sine;
  bool basis_given = false;
  int basis_n = 3;
  std::vector<Expr> x0;
  Expr u0;
  int pade_m = 0;
  int pade_n = 1;
};

// Parse and validate; errors name the offending line and key.
Problem parse_problem(const std::string& text);

struct RunOptions {
  std::string format = "plain";  // plain | latex | csv
  std::string samples;           // "lo:hi:n", empty for none
  std::string reference;         // rk4 | fd | empty
  bool allow_held = false;
  int max_passes = 1000;         // budget for repeated held-form resolution
};

struct RunResult {
  std::string output;  // the full stdout payload
  std::string report;  // structured report document
};

// Execute a problem document end to end.  Throws Error; map the code to a
// process exit status with exit_code_for.
RunResult run_problem(const std::string& text, const RunOptions& opt);

// 0 ok; 2 parse/validation; 4 unresolved symbolic work; 3 other method failure
int exit_code_for(ErrorCode c);

}  // namespace symapprox
