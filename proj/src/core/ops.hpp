#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/expr.hpp"

namespace symapprox {

// Replacement for an unresolved function: u(arg) -> body with `placeholder`
// standing for the argument.
struct FunctionTemplate {
  std::string placeholder;
  Expr body;
};

// Simultaneous substitution: symbols by name, wildcards by name (pattern
// bindings), unresolved functions by template.  Substituting into the
// integration variable of an enclosing Integral is an error, as is a
// replacement that would capture a bound variable.
struct Substitution {
  std::map<std::string, Expr> symbols;
  std::map<std::string, Expr> wildcards;
  std::map<std::string, FunctionTemplate> functions;

  Substitution& set(const std::string& name, Expr v) {
    symbols[name] = std::move(v);
    return *this;
  }
  Substitution& set(const Expr& symbol, Expr v) {  // symbol must be a Symbol
    symbols[symbol->name] = std::move(v);
    return *this;
  }
  Substitution& set_wild(const std::string& name, Expr v) {
    wildcards[name] = std::move(v);
    return *this;
  }
  Substitution& set_func(const std::string& name, FunctionTemplate t) {
    functions[name] = std::move(t);
    return *this;
  }
  bool empty() const { return symbols.empty() && wildcards.empty() && functions.empty(); }
};

// Build a template from a concrete expression in `var`:
// template_of(t^2, "t") applied as u(_) gives u(x) -> x^2.
FunctionTemplate template_of(const Expr& body_in_var, const std::string& var);

Expr substitute(const Expr& e, const Substitution& s);

// Full distribution of products over sums and of small integer powers of
// sums; pushes sums and var-free factors out of Deriv and Integral nodes.
Expr expand(const Expr& e);

// Exact evaluation to double.  "pi" is bound automatically unless overridden.
// Throws UnboundSymbol / DomainError / HeldNode.
double eval_numeric(const Expr& e, const std::map<std::string, double>& bindings);

// Coefficients [c0..cmax] with e = sum ck * s^k; throws NotPolynomialInSymbol
// if e is not polynomial in s or the degree exceeds max_order.
std::vector<Expr> collect_powers(const Expr& e, const std::string& s, int max_order);

// A name not colliding with any symbol/unknown occurring in the given
// expressions: base, base1, base2, ...
std::string fresh_name(const std::string& base, const std::vector<Expr>& avoid);

// Replace applications of an unknown function and its derivatives by plain
// symbols: u(var) -> slots[0], u'(var) -> slots[1], ... so the coefficients
// of a linear operator can be read off by differentiation.  Raises
// `violation` when the unknown is applied to anything but var, is
// differentiated in another variable, or its derivative order exceeds
// slots.size() - 1.
Expr replace_unknown_slots(const Expr& e, const std::string& unknown,
                           const Expr& var, const std::vector<Expr>& slots,
                           ErrorCode violation);

}  // namespace symapprox
