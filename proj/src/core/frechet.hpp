#pragma once

#include <map>
#include <string>
#include <utility>

#include "core/expr.hpp"

namespace symapprox {

// Directional (Fréchet) derivative of a functional expression F with respect
// to the unknown function `unknown`, in the direction of a new unknown
// function `direction`: each slot among u(x), u'(x), ..., u''''(x) follows
// the chain rule with the matching derivative of the direction, and the
// derivative commutes with integration (FD[∫f] = ∫FD[f]).
//
// The unknown must appear applied directly to a plain variable; composed or
// shifted arguments (u(x-1), u(g(x))) raise NonlocalDependence, as do
// integral bounds involving the unknown.  Derivative order is capped at 4.
Expr frechet_derivative(const Expr& F, const std::string& unknown,
                        const std::string& direction);

// The weak form generator: identical to frechet_derivative with the
// direction playing the role of the test function.  The stationarity
// condition "result = 0 for every test function" is the variational form.
Expr variational_form(const Expr& F, const std::string& unknown,
                      const std::string& test);

// Numeric oracle: returns (symbolic, numeric) where `symbolic` evaluates the
// Fréchet derivative at u = phi_value, direction = h_value (both concrete
// expressions in `var`), and `numeric` is the central Gateaux difference
// (F(u + eps·h) - F(u - eps·h)) / (2·eps) at the same bindings.
std::pair<double, double> gateaux_check(
    const Expr& F, const std::string& unknown, const std::string& var,
    const Expr& phi_value, const Expr& h_value,
    const std::map<std::string, double>& point, double eps);

}  // namespace symapprox
