#pragma once
#include <string>

#include "core/expr.hpp"

namespace symapprox {

// Plain infix form, parseable back by parse() (round trip up to canon).
std::string to_plain(const Expr& e);

// LaTeX form for display.
std::string to_latex(const Expr& e);

// Fixed significant digits, stable across runs ("%.12g" style).
std::string format_double(double v, int significant = 12);

}  // namespace symapprox
