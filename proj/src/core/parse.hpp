#pragma once

#include <string>

#include "core/expr.hpp"

namespace symapprox {

// Parse the plain-text expression grammar into a canonical expression.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := atom ('^' factor)?          (right associative)
//   atom    := number | ident | ident '(' args ')' | '(' expr ')'
//
// Numbers may be integers, fractions written with '/', or decimals; decimals
// are read exactly (0.25 becomes 1/4).  An identifier ending in '_' denotes a
// pattern wildcard.  The names sin, cos, exp, log are the built-in functions;
// D(expr, var [, order]) is a derivative, Int(f, var, lo, hi) an integral and
// pw(var, lo, hi, value [, lo, hi, value]...) a piecewise value.  Any other
// identifier applied to arguments is an unknown (uninterpreted) function.
//
// Throws Error(ParseError) with a character position on malformed input.
Expr parse(const std::string& text);

}  // namespace symapprox
