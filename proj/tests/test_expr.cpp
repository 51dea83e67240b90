#include "doctest.h"

#include "core/expr.hpp"

using namespace symapprox;

TEST_CASE("numeric folding is exact") {
  CHECK(equal(num(2) + num(3), num(5)));
  CHECK(equal(num(1, 3) + num(1, 6), num(1, 2)));
  CHECK(equal(num(2, 4), num(1, 2)));  // normalized on construction
  CHECK(equal(num(7) * num(1, 7), one()));
  CHECK(equal(num(2) - num(2), zero()));
  CHECK(equal(pow(num(2), num(10)), num(1024)));
  CHECK(equal(pow(num(4), num(-1, 2)), num(1, 2)));   // exact rational root
  CHECK(equal(pow(num(8, 27), num(2, 3)), num(4, 9)));
}

TEST_CASE("like terms and like factors collect") {
  Expr x = sym("x"), y = sym("y");
  CHECK(equal(x + x, 2 * x));
  CHECK(equal(x * x, pow(x, num(2))));
  CHECK(equal(3 * x - 3 * x, zero()));
  CHECK(equal(x * pow(x, num(3)), pow(x, num(4))));
  CHECK(equal(pow(x, num(2)) / x, x));
  // commutativity via canonical ordering
  CHECK(equal(x + y, y + x));
  CHECK(equal(x * y, y * x));
  CHECK(equal((x + y) + x, 2 * x + y));
}

TEST_CASE("identity elements vanish") {
  Expr x = sym("x");
  CHECK(equal(x + zero(), x));
  CHECK(equal(x * one(), x));
  CHECK(equal(x * zero(), zero()));
  CHECK(equal(pow(x, one()), x));
  CHECK(equal(pow(x, zero()), one()));
  CHECK(equal(pow(one(), sym("k")), one()));
}

TEST_CASE("canon is idempotent and pointer-stable") {
  Expr x = sym("x");
  Expr e = canon((x + 1) * (x - 1) + sin_(x) * sin_(x));
  Expr e2 = canon(e);
  CHECK(equal(e, e2));
  CHECK(e.get() == e2.get());  // cached canonical flag short-circuits
}

TEST_CASE("flattening nested sums and products") {
  Expr x = sym("x"), y = sym("y"), z = sym("z");
  Expr nested = canon(make_sum({make_sum({x, y}), z}));
  Expr flat = canon(make_sum({x, y, z}));
  CHECK(equal(nested, flat));
  Expr nestedp = canon(make_product({make_product({x, y}), z}));
  CHECK(equal(nestedp, canon(make_product({x, y, z}))));
}

TEST_CASE("special function values fold") {
  CHECK(equal(sin_(zero()), zero()));
  CHECK(equal(cos_(zero()), one()));
  CHECK(equal(exp_(zero()), one()));
  CHECK(equal(log_(one()), zero()));
  Expr pi = sym("pi");
  CHECK(equal(sin_(pi), zero()));
  CHECK(equal(cos_(pi), minus_one()));
  CHECK(equal(sin_(pi / 2), one()));
  CHECK(equal(cos_(pi / 2), zero()));
  CHECK(equal(sin_(pi / 6), num(1, 2)));
  CHECK(equal(sin_(2 * pi + pi / 2), one()));  // period reduction
}

TEST_CASE("parity of sin and cos") {
  Expr x = sym("x");
  CHECK(equal(sin_(-x), -sin_(x)));
  CHECK(equal(cos_(-x), cos_(x)));
  CHECK(equal(sin_(-3 * x), -sin_(3 * x)));
}

TEST_CASE("exponential power folding") {
  Expr a = sym("a"), r = num(3);
  CHECK(equal(pow(exp_(a), r), exp_(3 * a)));
  CHECK(equal(exp_(a) * exp_(2 * a), exp_(3 * a)));
}

TEST_CASE("total order ranks kinds before structure") {
  Expr x = sym("x");
  CHECK(compare(num(5), x) < 0);           // numbers before symbols
  CHECK(compare(x, pow(x, num(2))) < 0);   // symbols before powers
  CHECK(compare(sym("a"), sym("b")) < 0);  // names lexicographic
  CHECK(compare(x, x) == 0);
}

TEST_CASE("small queries") {
  CHECK(is_number(num(3, 2)));
  CHECK(is_integer_number(num(4)));
  CHECK_FALSE(is_integer_number(num(3, 2)));
  CHECK(as_small_int(num(42)).value() == 42);
  CHECK_FALSE(as_small_int(num(1, 2)).has_value());
  CHECK(is_zero_literal(zero()));
  CHECK(is_one_literal(one()));
  CHECK(is_symbol(sym("q"), "q"));
}

TEST_CASE("free_of respects integration binding") {
  Expr x = sym("x"), t = sym("t");
  Expr inner = integral(sin_(x), x, zero(), t);
  CHECK(free_of(inner, "x"));       // x only occurs bound
  CHECK_FALSE(free_of(inner, "t")); // upper bound is free
  Expr bound_in_bounds = integral(sin_(t), t, zero(), x);
  CHECK_FALSE(free_of(bound_in_bounds, "x"));
}

TEST_CASE("free symbol collection") {
  Expr e = sym("a") * sin_(sym("w") * sym("t")) + num(2);
  auto fs = free_symbols(e);
  CHECK(fs.count("a") == 1);
  CHECK(fs.count("w") == 1);
  CHECK(fs.count("t") == 1);
  CHECK(fs.size() == 3);
}

TEST_CASE("unknown applications stay inert") {
  Expr t = sym("t");
  Expr u = unknown("u", {t});
  CHECK(u->kind == Kind::UnknownApp);
  CHECK(contains_unknown(u + t, "u"));
  CHECK_FALSE(contains_unknown(t * t, "u"));
  CHECK(equal(u + u, 2 * u));  // still collected like any atom
}

TEST_CASE("derivative nodes normalize their operand") {
  Expr t = sym("t");
  Expr d = deriv(unknown("u", {t}), t, 1);
  CHECK(d->kind == Kind::Deriv);
  CHECK(d->order == 1);
  CHECK(contains_kind(d, Kind::UnknownApp));
}

TEST_CASE("piecewise values participate in canon") {
  Expr x = sym("x");
  Expr pw = piecewise(x, {{zero(), num(1, 2), x + x}});
  CHECK(pw->kind == Kind::Piecewise);
  CHECK(equal(pw->pieces[0].value, 2 * x));
}
