#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/expr.hpp"

namespace symapprox {

// Side record accumulated by the solvers: which nonvanishing assumptions a
// solution rests on, which integrals stayed unresolved, diagnostics.
struct SolveReport {
  std::vector<Expr> genericity;              // each entry assumed != 0
  std::vector<Expr> unresolved_integrals;    // held Integral nodes
  std::vector<std::string> warnings;         // secular terms, probe-only zeros...
  int iterations_run = 0;
  std::vector<std::pair<double, double>> residual_samples;  // (point, residual)

  void note_generic(const Expr& e);        // dedups under structural equality
  void note_unresolved(const Expr& e);     // dedups
  void warn(const std::string& msg);       // dedups
  void merge(const SolveReport& other);

  bool clean() const {
    return genericity.empty() && unresolved_integrals.empty() && warnings.empty();
  }

  std::string to_text() const;
};

}  // namespace symapprox
