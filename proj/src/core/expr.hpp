#pragma once
#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace symapprox {

// Immutable expression nodes shared by pointer.  Construction is cheap and
// uncanonicalized; canon() produces the unique normal form and marks nodes so
// repeated canonicalization is O(1).

enum class Kind : uint8_t {
  Number,     // exact rational (GMP)
  Symbol,     // named indeterminate ("pi" gets special trig/eval treatment)
  Power,      // kids = {base, exponent}
  Product,    // kids = factors (n-ary, flattened when canonical)
  FuncApp,    // sin/cos/exp/log, kids = {arg}
  UnknownApp, // unresolved function application u(t), u(x,t), ...
  Deriv,      // held derivative; kids = {expr, var}, order >= 1
  Integral,   // held integral; kids = {integrand, var, lo, hi}
  Piecewise,  // kids = {var}; pieces give value on [lo,hi), 0 elsewhere
  Wildcard,   // pattern slot; name ends with '_' by convention
  Sum,        // kids = terms (n-ary, flattened when canonical)
};

enum class Func : uint8_t { Sin, Cos, Exp, Log };

enum class WildConstraint : uint8_t { Any, NumberOnly, IntegerOnly, SymbolOnly };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct PiecewisePiece {
  Expr lo, hi, value;
};

struct ExprNode {
  Kind kind{};
  mpq_class number;        // Kind::Number
  std::string name;        // Symbol / UnknownApp / Wildcard
  Func func{};             // FuncApp
  int order = 0;           // Deriv
  WildConstraint wild{};   // Wildcard
  std::vector<Expr> kids;
  std::vector<PiecewisePiece> pieces;  // Piecewise
  mutable std::atomic<bool> canonical{false};
};

// --- raw constructors (no canonicalization) ---------------------------------
Expr make_number(mpq_class q);
Expr make_symbol(std::string name);
Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);
Expr make_power(Expr base, Expr exponent);
Expr make_func(Func f, Expr arg);
Expr make_unknown(std::string name, std::vector<Expr> args);
Expr make_deriv(Expr expr, Expr var, int order);
Expr make_integral(Expr integrand, Expr var, Expr lo, Expr hi);
Expr make_piecewise(Expr var, std::vector<PiecewisePiece> pieces);
Expr make_wildcard(std::string name, WildConstraint c = WildConstraint::Any);

// --- canonicalizing helpers --------------------------------------------------
Expr num(long n);
Expr num(long n, long d);
Expr num(const mpq_class& q);
Expr sym(const std::string& name);
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(Expr base, Expr exponent);
Expr sin_(Expr a);
Expr cos_(Expr a);
Expr exp_(Expr a);
Expr log_(Expr a);
Expr unknown(const std::string& name, std::vector<Expr> args);
Expr deriv(Expr expr, Expr var, int order = 1);
Expr integral(Expr integrand, Expr var, Expr lo, Expr hi);
Expr piecewise(Expr var, std::vector<PiecewisePiece> pieces);

Expr zero();
Expr one();
Expr minus_one();

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator+(const Expr& a, long b);
Expr operator+(long a, const Expr& b);
Expr operator-(const Expr& a, long b);
Expr operator-(long a, const Expr& b);
Expr operator*(const Expr& a, long b);
Expr operator*(long a, const Expr& b);
Expr operator/(const Expr& a, long b);
Expr operator/(long a, const Expr& b);

// --- ordering / equality -----------------------------------------------------
// Total order: numbers < symbols < powers < products < function applications
// < unknown applications < derivatives < integrals < piecewise < wildcards
// < sums; ties broken structurally.  Stable across runs.
int compare(const Expr& a, const Expr& b);
bool equal(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// --- canonical form ----------------------------------------------------------
// Flattens nested sums/products, sorts by compare(), folds numeric subterms
// exactly, collects like terms (rational coefficients) and like factors
// (exponents add), folds exp(a)^r -> exp(r*a), integer powers of products,
// exact trig values at rational multiples of pi, and sin/cos parity.
// Idempotent: canon(canon(e)) == canon(e) (same pointer, in fact).
Expr canon(const Expr& e);

// --- small queries -----------------------------------------------------------
bool is_number(const Expr& e);
bool is_integer_number(const Expr& e);
std::optional<long> as_small_int(const Expr& e);
bool is_zero_literal(const Expr& e);
bool is_one_literal(const Expr& e);
bool is_symbol(const Expr& e);
bool is_symbol(const Expr& e, const std::string& name);

// True when `symbol` does not occur free in e.  Integration variables are
// binding: occurrences of the integration variable inside the integrand do
// not count, occurrences in the bounds do.
bool free_of(const Expr& e, const std::string& symbol);
bool free_of(const Expr& e, const Expr& symbol);  // symbol must be a Symbol node

// True if any node of the given kind occurs (bound or not).
bool contains_kind(const Expr& e, Kind k);
// True if an UnknownApp with this name occurs.
bool contains_unknown(const Expr& e, const std::string& name);

// Collect the names of all free symbols.
std::set<std::string> free_symbols(const Expr& e);

const char* func_name(Func f);
std::optional<Func> func_by_name(const std::string& s);

}  // namespace symapprox
