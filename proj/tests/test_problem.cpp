#include "doctest.h"

#include <string>

#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/parse.hpp"
#include "core/polyfrac.hpp"
#include "core/problem.hpp"

using namespace symapprox;

namespace {
RunResult run(const std::string& doc, RunOptions opt = {}) {
  return run_problem(doc, opt);
}
}  // namespace

TEST_CASE("problem files parse their declarations") {
  Problem p = parse_problem(
      "# comment line\n"
      "symbols: k generic, e generic\n"
      "unknown: u(t)\n"
      "equation: D(u(t),t) + k*u(t) + e*u(t)^2 = 0\n"
      "initial: u(0) = 1\n"
      "method: perturb\n"
      "param: e\n"
      "order: 1\n");
  CHECK(p.unknown == "u");
  CHECK(is_symbol(p.var, "t"));
  CHECK(p.method == Method::Perturb);
  CHECK(p.order == 1);
  CHECK(p.param == "e");
  CHECK(p.generic_symbols.count("k") == 1);
  REQUIRE(p.initial.has_value());
  CHECK(definitely_equal(p.initial->value, one()));
  REQUIRE(p.equations.size() == 1);
  CHECK(definitely_equal(
      p.equations[0], parse("D(u(t),t) + k*u(t) + e*u(t)^2")));
}

TEST_CASE("scalar unknowns and map-form equations") {
  Problem p = parse_problem(
      "unknown: x\n"
      "equation: x = cos(x)\n"
      "method: steffensen\n"
      "x0: 0\n");
  REQUIRE(p.scalar_unknowns.size() == 1);
  REQUIRE(p.map_rhs.size() == 1);
  CHECK(static_cast<bool>(p.map_rhs[0]));
  CHECK(definitely_equal(p.map_rhs[0], parse("cos(x)")));
}

TEST_CASE("parse failures name the line and the key") {
  auto check_fail = [](const std::string& doc, const std::string& needle) {
    CAPTURE(doc);
    CAPTURE(needle);
    try {
      parse_problem(doc);
      FAIL("expected a parse failure");
    } catch (const Error& e) {
      CHECK(exit_code_for(e.code()) == 2);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  check_fail("unknown: x\nequation:\nmethod: newton\n", "equation");
  check_fail("unknown: x\nequation:\nmethod: newton\n", "line 2");
  check_fail("unknown: x\nequation: x = 1\nmethod: warp\n", "method");
  check_fail("unknown: x\nequation: x = 1\nmethod: newton\nbogus: 1\n",
             "bogus");
  check_fail("unknown: u(t)\nequation: u(t) = 1\nmethod: perturb\n"
             "initial: w(0) = 1\n", "initial");
  check_fail("unknown: x\nequation: x == 1\nmethod: newton\n", "equation");
}

TEST_CASE("missing required keys are reported") {
  CHECK_THROWS_AS(parse_problem("unknown: x\nequation: x = 1\n"), Error);
  CHECK_THROWS_AS(parse_problem("method: newton\nequation: x = 1\n"), Error);
  CHECK_THROWS_AS(parse_problem("unknown: x\nmethod: newton\n"), Error);
}

TEST_CASE("runner: scalar fixed point") {
  RunResult r = run(
      "unknown: x\n"
      "equation: x = (x + 2/x)/2\n"
      "method: fixedpoint\n"
      "x0: 1\n"
      "iterations: 3\n");
  CHECK(r.output == "577/408\n");
}

TEST_CASE("runner: steffensen acceleration") {
  RunResult r = run(
      "unknown: x\n"
      "equation: x = x/2 + 1\n"
      "method: steffensen\n"
      "x0: 0\n");
  CHECK(r.output == "2\n");
}

TEST_CASE("runner: newton system prints assignments") {
  RunResult r = run(
      "symbols: p generic\n"
      "unknown: x, y\n"
      "equation: 2*(x - 1) + 4*p*x*(x^2 - y) = 0\n"
      "equation: -2*p*(x^2 - y) = 0\n"
      "method: newton\n"
      "iterations: 2\n"
      "x0: 0, 0\n");
  CHECK(r.output == "x = 1, y = 1\n");
  CHECK(r.report.find("p") != std::string::npos);  // genericity surfaced
}

TEST_CASE("runner: perturbation output is the truncated series") {
  RunResult r = run(
      "symbols: k generic, e generic\n"
      "unknown: u(t)\n"
      "equation: D(u(t),t) + k*u(t) + e*u(t)^2 = 0\n"
      "initial: u(0) = 1\n"
      "method: perturb\n"
      "param: e\n"
      "order: 1\n");
  // canonical plain form of the documented golden expression
  Expr got = parse(r.output.substr(0, r.output.find('\n')));
  Expr want = parse("exp(-k*t) + (e/k)*(exp(-2*k*t) - exp(-k*t))");
  CHECK(definitely_equal(got, want));
}

TEST_CASE("runner: pade resummation restores the exact solution") {
  RunResult r = run(
      "symbols: k generic, e generic\n"
      "unknown: u(t)\n"
      "equation: D(u(t),t) + k*u(t) + e*u(t)^2 = 0\n"
      "initial: u(0) = 1\n"
      "method: pade\n"
      "param: e\n"
      "pade: 0,1\n");
  Expr got = parse(r.output.substr(0, r.output.find('\n')));
  Expr want = parse("k/(-e + (e + k)*exp(k*t))");
  CHECK(definitely_equal(got, want));
}

TEST_CASE("runner: csv sampling") {
  RunOptions opt;
  opt.format = "csv";
  opt.samples = "0:1:5";
  RunResult r = run(
      "unknown: u(x)\n"
      "equation: -D(u(x),x,2) = 1\n"
      "boundary: u(0) = 0, u(1) = 0\n"
      "method: galerkin-elliptic\n"
      "basis: sine\n"
      "basis_n: 3\n",
      opt);
  CHECK(r.output.substr(0, 9) == "x,approx\n");
  // header + 5 rows
  int lines = 0;
  for (char c : r.output)
    if (c == '\n') ++lines;
  CHECK(lines == 6);
}

TEST_CASE("runner: csv with a numeric reference column") {
  RunOptions opt;
  opt.format = "csv";
  opt.samples = "0:1:3";
  opt.reference = "fd";
  RunResult r = run(
      "unknown: u(x)\n"
      "equation: -D(u(x),x,2) = 1\n"
      "boundary: u(0) = 0, u(1) = 0\n"
      "method: galerkin-elliptic\n"
      "basis: sine\n"
      "basis_n: 3\n",
      opt);
  CHECK(r.output.substr(0, 19) == "x,approx,reference\n");
}

TEST_CASE("runner: validation errors carry exit code 2") {
  RunOptions csv_no_samples;
  csv_no_samples.format = "csv";
  try {
    run("unknown: x\nequation: x = 1/2*x\nmethod: fixedpoint\nx0: 1\n",
        csv_no_samples);
    FAIL("expected a validation failure");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.code()) == 2);
  }
  RunOptions bad_format;
  bad_format.format = "yaml";
  CHECK_THROWS_AS(
      run("unknown: x\nequation: x = 1/2*x\nmethod: fixedpoint\nx0: 1\n",
          bad_format),
      Error);
}

TEST_CASE("runner: held integrals raise exit code 4 unless allowed") {
  std::string doc =
      "unknown: u(t)\n"
      "equation: D(u(t),t) + u(t) = log(1 + t)\n"
      "initial: u(0) = 0\n"
      "method: fixedpoint\n"
      "param: 1\n"
      "iterations: 1\n";
  try {
    run(doc);
    FAIL("expected UnresolvedIntegral");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.code()) == 4);
  }
  RunOptions allow;
  allow.allow_held = true;
  RunResult r = run(doc, allow);
  CHECK(r.output.find("Int(") != std::string::npos);
  CHECK(r.report.find("unresolved") != std::string::npos);
}

TEST_CASE("runner: frechet emits the weak form") {
  RunResult r = run(
      "unknown: u(x)\n"
      "equation: Int(D(u(x),x)^2/2 - f(x)*u(x), x, 0, 1)\n"
      "method: frechet\n"
      "param: v\n");
  Expr got = parse(r.output.substr(0, r.output.find('\n')));
  CHECK(definitely_equal(
      got, parse("Int(D(u(x),x)*D(v(x),x) - f(x)*v(x), x, 0, 1)")));
}

TEST_CASE("runner: spectral eigenvalues print per line") {
  RunResult r = run(
      "unknown: u(x)\n"
      "equation: -D(u(x),x,2) = lambda*u(x)\n"
      "boundary: u(0) = 0, u(1) = 0\n"
      "method: galerkin-spectral\n"
      "param: lambda\n"
      "basis: sine\n"
      "basis_n: 2\n");
  CHECK(r.output.find("lambda1 = ") != std::string::npos);
  CHECK(r.output.find("lambda2 = ") != std::string::npos);
  std::string first = r.output.substr(0, r.output.find('\n'));
  REQUIRE(first.rfind("lambda1 = ", 0) == 0);
  CHECK(definitely_equal(parse(first.substr(10)), parse("pi^2")));
}

TEST_CASE("runner: evolution systems print their matrices") {
  RunResult r = run(
      "unknown: u(x)\n"
      "equation: -D(u(x),x,2) = 0\n"
      "boundary: u(0) = 0, u(1) = 0\n"
      "method: galerkin-evolution\n"
      "basis: sine\n"
      "basis_n: 2\n"
      "u0: x*(1 - x)\n");
  CHECK(r.output.find("K = [[") != std::string::npos);
  CHECK(r.output.find("M = [[") != std::string::npos);
  CHECK(r.output.find("c0 = [") != std::string::npos);
}

TEST_CASE("runner: latex format changes only the rendering") {
  RunOptions latex;
  latex.format = "latex";
  RunResult r = run(
      "unknown: x\n"
      "equation: x = (x + 2/x)/2\n"
      "method: fixedpoint\n"
      "x0: 1\n"
      "iterations: 2\n",
      latex);
  CHECK(r.output.find("\\frac") != std::string::npos);
}

TEST_CASE("runner: newton-bvp closed form and basis-selected backend") {
  RunResult closed = run(
      "symbols: a generic\n"
      "unknown: u(x)\n"
      "equation: D(u(x),x,2) + (a*D(u(x),x))^2 + 1 = 0\n"
      "boundary: u(0) = 0, u(1) = 0\n"
      "method: newton-bvp\n"
      "u0: 0\n"
      "iterations: 1\n");
  Expr got = parse(closed.output.substr(0, closed.output.find('\n')));
  CHECK(definitely_equal(got, parse("x*(1 - x)/2")));
}
