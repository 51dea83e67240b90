#pragma once
#include "core/expr.hpp"

namespace symapprox {

// Rewrites products and integer powers (>= 2) of sin/cos into linear
// combinations of single sin/cos applications via the product-to-sum
// identities:
//   sin(a)*sin(b) -> (cos(a-b) - cos(a+b))/2
//   cos(a)*cos(b) -> (cos(a-b) + cos(a+b))/2
//   sin(a)*cos(b) -> (sin(a+b) + sin(a-b))/2
//   sin(a)^2 -> (1 - cos(2a))/2,  cos(a)^2 -> (1 + cos(2a))/2
// The result is expanded and canonical; the total trig degree strictly
// decreases each pass, so the rewrite terminates.
Expr linearize_trig(const Expr& e);

}  // namespace symapprox
