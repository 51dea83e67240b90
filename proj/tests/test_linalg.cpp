#include "doctest.h"

#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/linalg.hpp"
#include "core/parse.hpp"
#include "core/polyfrac.hpp"

using namespace symapprox;

TEST_CASE("rational systems solve exactly") {
  Matrix a{{num(2), num(1)}, {num(1), num(3)}};
  Vector b{num(5), num(10)};
  Vector x = linear_solve_symbolic(a, b);
  REQUIRE(x.size() == 2);
  CHECK(definitely_equal(x[0], num(1)));
  CHECK(definitely_equal(x[1], num(3)));
}

TEST_CASE("symbolic pivots are recorded as genericity assumptions") {
  Expr p = sym("p");
  Matrix a{{2 + 12 * p, -4 * p}, {-4 * p, 2 * p}};
  Vector b{4 * p, -2 * p};
  std::vector<Expr> generic;
  Vector x = linear_solve_symbolic(a, b, &generic);
  CHECK(definitely_equal(x[0], zero()));
  CHECK(definitely_equal(x[1], minus_one()));
  CHECK_FALSE(generic.empty());
}

TEST_CASE("diagonal and triangular shortcuts stay exact") {
  Matrix a{{num(1, 2), zero(), zero()},
           {zero(), num(1, 2), zero()},
           {zero(), zero(), num(1, 2)}};
  Vector b{parse("4/pi^3"), zero(), parse("4/(27*pi^3)")};
  Vector x = linear_solve_symbolic(a, b);
  CHECK(definitely_equal(x[0], parse("8/pi^3")));
  CHECK(definitely_equal(x[1], zero()));
  CHECK(definitely_equal(x[2], parse("8/(27*pi^3)")));
}

TEST_CASE("singular systems are refused") {
  Matrix a{{num(1), num(2)}, {num(2), num(4)}};
  Vector b{num(1), num(2)};
  CHECK_THROWS_AS(linear_solve_symbolic(a, b), Error);
  try {
    linear_solve_symbolic(a, b);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}

TEST_CASE("undecidable pivots are flagged, not guessed") {
  // Int(u(tau),tau,0,1) is opaque to the zero decision
  Expr opaque = parse("Int(u(tau), tau, 0, 1)");
  Matrix a{{opaque, one()}, {one(), one()}};
  Vector b{one(), one()};
  try {
    linear_solve_symbolic(a, b);
    // a pivot order avoiding the opaque entry is also acceptable
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousPivot);
  }
}

TEST_CASE("determinants") {
  Matrix a{{num(1), num(2)}, {num(3), num(4)}};
  CHECK(definitely_equal(det_symbolic(a), num(-2)));
  Expr p = sym("p");
  Matrix m{{2 + 12 * p, -4 * p}, {-4 * p, 2 * p}};
  CHECK(definitely_equal(det_symbolic(m), parse("4*p + 8*p^2")));
  Matrix id3{{one(), zero(), zero()},
             {zero(), one(), zero()},
             {zero(), zero(), one()}};
  CHECK(definitely_equal(det_symbolic(id3), one()));
}

TEST_CASE("solutions satisfy the system") {
  Expr k = sym("k");
  Matrix a{{k, one()}, {one(), k}};
  Vector b{one(), zero()};
  std::vector<Expr> generic;
  Vector x = linear_solve_symbolic(a, b, &generic);
  for (size_t i = 0; i < a.size(); ++i) {
    Expr lhs = zero();
    for (size_t j = 0; j < x.size(); ++j) lhs = lhs + a[i][j] * x[j];
    CHECK(definitely_equal(lhs, b[i]));
  }
}
