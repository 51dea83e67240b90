#pragma once
#include <functional>
#include <optional>

#include "core/ops.hpp"

namespace symapprox {

// Wildcard-name -> matched subexpression.
using Bindings = std::map<std::string, Expr>;

// Structural matching: both sides are canonicalized, then compared node by
// node; a wildcard matches any subtree subject to its constraint, and a
// repeated wildcard must match equal subtrees.  Sums and products match
// positionally in canonical order (no associative-commutative search, no
// segment variables).
std::optional<Bindings> match(const Expr& e, const Expr& pattern);

struct Rule {
  Expr lhs;
  Expr rhs;                                        // template over lhs wildcards
  std::function<bool(const Bindings&)> condition;  // optional guard
  std::function<Expr(const Bindings&)> build;      // optional; overrides rhs
};

// Instantiate a template with wildcard bindings.
Expr apply_bindings(const Expr& tmpl, const Bindings& b);

// Leftmost-innermost rewriting: each pass visits subterms post-order, the
// first matching rule fires at most once per position, and the result is
// recanonicalized.  Passes repeat until none changes anything; exceeding
// max_passes raises RewriteBudgetExceeded.
Expr rewrite_fixpoint(const Expr& e, const std::vector<Rule>& rules,
                      int max_passes = 1000);

}  // namespace symapprox
