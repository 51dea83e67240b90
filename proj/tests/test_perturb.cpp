#include "doctest.h"

#include <cmath>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/numvalid.hpp"
#include "core/ops.hpp"
#include "core/parse.hpp"
#include "core/perturb.hpp"
#include "core/polyfrac.hpp"

using namespace symapprox;

namespace {
PerturbProblem bernoulli() {
  PerturbProblem p;
  p.equation = parse("D(u(t),t) + k*u(t) + e*u(t)^2");
  p.unknown = "u";
  p.var = sym("t");
  p.eps = sym("e");
  p.t0 = zero();
  p.u_init = one();
  return p;
}
}  // namespace

TEST_CASE("quadratically damped decay expands exactly to first order") {
  PerturbSolution s = perturb_solve_ode(bernoulli(), 1);
  CHECK(s.achieved_order == 1);
  REQUIRE(s.coeffs.size() == 2);
  CHECK(definitely_equal(s.coeffs[0], parse("exp(-k*t)")));
  CHECK(definitely_equal(s.coeffs[1],
                         parse("(exp(-2*k*t) - exp(-k*t))/k")));
  CHECK(definitely_equal(
      s.truncated,
      parse("exp(-k*t) + (e/k)*(exp(-2*k*t) - exp(-k*t))")));
}

TEST_CASE("second-order coefficient keeps satisfying the cascade") {
  PerturbSolution s = perturb_solve_ode(bernoulli(), 2);
  REQUIRE(s.coeffs.size() == 3);
  // the order-2 right side is -2 u0 u1; check w2' + k w2 + 2 u0 u1 = 0
  Expr w2 = s.coeffs[2];
  Expr resid = rational_simplify(
      diff(w2, sym("t")) + sym("k") * w2 +
      2 * s.coeffs[0] * s.coeffs[1]);
  CHECK(is_zero(resid).state == ZeroState::Zero);
  // initial value: every corrector vanishes at t0
  Substitution at0;
  at0.set("t", zero());
  CHECK(definitely_equal(substitute(w2, at0), zero()));
}

TEST_CASE("expansion against the numeric reference") {
  PerturbSolution s = perturb_solve_ode(bernoulli(), 2);
  // small damping: the truncated series tracks rk4 to O(e^3)
  double e = 0.05, k = 1.3;
  auto traj = rk4_ivp(parse("-k*u - e*u^2"), "t", "u", 1.0, 0.0, 1.0, 400,
                      {{"k", k}, {"e", e}});
  double approx =
      eval_numeric(s.truncated, {{"t", 1.0}, {"k", k}, {"e", e}});
  CHECK(std::abs(approx - traj.back().second) < 5 * e * e * e);
}

TEST_CASE("secular terms are flagged") {
  // u' = e t sin t, u(0) = 0: the first corrector is sin t - t cos t
  PerturbProblem p;
  p.equation = parse("D(u(t),t) - e*t*sin(t)");
  p.unknown = "u";
  p.var = sym("t");
  p.eps = sym("e");
  p.t0 = zero();
  p.u_init = zero();
  PerturbSolution s = perturb_solve_ode(p, 1);
  CHECK(definitely_equal(s.coeffs[1], parse("sin(t) - t*cos(t)")));
  bool secular_flag = false;
  for (const auto& w : s.report.warnings)
    if (w.find("secular") != std::string::npos) secular_flag = true;
  CHECK(secular_flag);
}

TEST_CASE("non-polynomial small parameters are not regular") {
  PerturbProblem p;
  p.equation = parse("D(u(t),t) + exp(e)*u(t)");
  p.unknown = "u";
  p.var = sym("t");
  p.eps = sym("e");
  p.t0 = zero();
  p.u_init = one();
  CHECK_THROWS_AS(perturb_solve_ode(p, 1), Error);
  try {
    perturb_solve_ode(p, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRegular);
  }
}

TEST_CASE("unsolvable order-0 problems raise, higher orders truncate") {
  // order-0 equation w0' + w0 = log(1 + t) has no closed form here
  PerturbProblem p;
  p.equation = parse("D(u(t),t) + u(t) - log(1 + t)");
  p.unknown = "u";
  p.var = sym("t");
  p.eps = sym("e");
  p.t0 = zero();
  p.u_init = zero();
  CHECK_THROWS_AS(perturb_solve_ode(p, 1), Error);

  // order-1 right side outside the class: stop at order 0 with a warning
  PerturbProblem q;
  q.equation = parse("D(u(t),t) + u(t) - e*log(1 + t)");
  q.unknown = "u";
  q.var = sym("t");
  q.eps = sym("e");
  q.t0 = zero();
  q.u_init = zero();
  PerturbSolution s = perturb_solve_ode(q, 1);
  CHECK(s.achieved_order == 0);
  CHECK(definitely_equal(s.coeffs[0], zero()));
  CHECK_FALSE(s.report.warnings.empty());
}

TEST_CASE("algebraic roots expand in the perturbation") {
  // x^2 - 1 + e = 0 near x = 1: x(e) = 1 - e/2 - e^2/8 - ...
  AlgebraicPerturbSolution s = perturb_solve_algebraic(
      parse("x^2 - 1 + e"), sym("x"), sym("e"), one(), 2);
  REQUIRE(s.coeffs.size() == 3);
  CHECK(definitely_equal(s.coeffs[0], one()));
  CHECK(definitely_equal(s.coeffs[1], num(-1, 2)));
  CHECK(definitely_equal(s.coeffs[2], num(-1, 8)));
  // sanity against the closed form sqrt(1 - e)
  double e = 0.01;
  double approx = eval_numeric(s.truncated, {{"e", e}});
  CHECK(std::abs(approx - std::sqrt(1 - e)) < 1e-6);
}

TEST_CASE("algebraic expansion refuses bad starting roots") {
  CHECK_THROWS_AS(perturb_solve_algebraic(parse("x^2 - 1 + e"), sym("x"),
                                          sym("e"), num(2), 1),
                  Error);
  // double root: f_x vanishes at the root
  try {
    perturb_solve_algebraic(parse("(x - 1)^2 + e"), sym("x"), sym("e"), one(),
                            1);
    FAIL("expected DegenerateRoot");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateRoot);
  }
}
