#include "doctest.h"

#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/parse.hpp"
#include "core/pattern.hpp"
#include "core/polyfrac.hpp"

using namespace symapprox;

TEST_CASE("wildcards bind subtrees") {
  auto b = match(parse("sin(k*t)"), parse("sin(a_)"));
  REQUIRE(b);
  CHECK(equal(b->at("a_"), parse("k*t")));
}

TEST_CASE("repeated wildcards must agree") {
  CHECK(match(parse("sin(x)*cos(x)"), parse("sin(a_)*cos(a_)")));
  CHECK_FALSE(match(parse("sin(x)*cos(y)"), parse("sin(a_)*cos(a_)")));
}

TEST_CASE("constrained wildcards") {
  Expr pat_num = make_power(make_wildcard("b_"),
                            make_wildcard("n_", WildConstraint::NumberOnly));
  CHECK(match(parse("x^3"), pat_num));
  CHECK_FALSE(match(parse("x^k"), pat_num));
}

TEST_CASE("match is structural on canonical forms") {
  // 1 + x canonicalizes identically on both sides
  CHECK(match(parse("x + 1"), parse("1 + x")));
  CHECK_FALSE(match(parse("x + 2"), parse("x + 1")));
}

TEST_CASE("apply_bindings instantiates templates") {
  auto b = match(parse("exp(3*t)"), parse("exp(a_)"));
  REQUIRE(b);
  CHECK(equal(apply_bindings(parse("a_^2"), *b), parse("9*t^2")));
}

TEST_CASE("rewrite reaches a fixpoint") {
  // log(a*b) -> log a + log b, applied recursively
  std::vector<Rule> rules{{parse("log(a_*b_)"), parse("log(a_) + log(b_)"),
                           nullptr, nullptr}};
  Expr e = rewrite_fixpoint(parse("log(x*y*z)"), rules);
  CHECK(definitely_equal(e, parse("log(x) + log(y) + log(z)")));
}

TEST_CASE("rule guards veto matches") {
  std::vector<Rule> rules{{parse("sin(n_)"), parse("n_"),
                           [](const Bindings& b) {
                             return is_number(b.at("n_"));
                           },
                           nullptr}};
  CHECK(definitely_equal(rewrite_fixpoint(parse("sin(2)"), rules), num(2)));
  CHECK(equal(rewrite_fixpoint(parse("sin(x)"), rules), parse("sin(x)")));
}

TEST_CASE("builder rules construct their replacement") {
  std::vector<Rule> rules{{parse("cos(a_)^2"), Expr(), nullptr,
                           [](const Bindings& b) {
                             Expr a = b.at("a_");
                             return (one() + cos_(2 * a)) / 2;
                           }}};
  Expr e = rewrite_fixpoint(parse("cos(w)^2"), rules);
  CHECK(definitely_equal(e, parse("(1 + cos(2*w))/2")));
}

TEST_CASE("ping-pong rule sets exhaust the pass budget") {
  std::vector<Rule> rules{
      {parse("sin(a_)"), parse("cos(a_)"), nullptr, nullptr},
      {parse("cos(a_)"), parse("sin(a_)"), nullptr, nullptr},
  };
  CHECK_THROWS_AS(rewrite_fixpoint(parse("sin(q)"), rules, 8), Error);
  try {
    rewrite_fixpoint(parse("sin(q)"), rules, 8);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RewriteBudgetExceeded);
  }
}
