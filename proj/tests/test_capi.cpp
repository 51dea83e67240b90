// Exercises the C interface exactly as an embedding client would: only the
// public header, only the exported functions.
#include "doctest.h"

#include <cstring>
#include <string>

#include "symapprox.h"

namespace {

// RAII helpers so failing CHECKs cannot leak handles.
struct ExprHandle {
  sym_expr* e = nullptr;
  explicit ExprHandle(sym_expr* p) : e(p) {}
  ~ExprHandle() { sym_free(e); }
  ExprHandle(const ExprHandle&) = delete;
  ExprHandle& operator=(const ExprHandle&) = delete;
  operator sym_expr*() const { return e; }
  explicit operator bool() const { return e != nullptr; }
};

std::string render(const sym_expr* e) {
  char* s = sym_render(e);
  REQUIRE(s != nullptr);
  std::string out(s);
  sym_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("version string is present") {
  const char* v = sym_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("parse and render round trip") {
  ExprHandle e(sym_parse("x^2 + 2*x + 1"));
  REQUIRE(e);
  CHECK(sym_last_status() == SYM_OK);
  std::string text = render(e);
  ExprHandle back(sym_parse(text.c_str()));
  REQUIRE(back);
  CHECK(sym_equal(e, back) == 1);
}

TEST_CASE("latex rendering differs from plain") {
  ExprHandle e(sym_parse("x/2"));
  REQUIRE(e);
  char* s = sym_render_latex(e);
  REQUIRE(s != nullptr);
  CHECK(std::string(s).find("\\frac") != std::string::npos);
  sym_free_string(s);
}

TEST_CASE("arithmetic and simplification") {
  ExprHandle num(sym_parse("x^2 - 1"));
  ExprHandle den(sym_parse("x - 1"));
  REQUIRE(num);
  REQUIRE(den);
  ExprHandle q(sym_div(num, den));
  REQUIRE(q);
  ExprHandle s(sym_simplify(q));
  REQUIRE(s);
  ExprHandle want(sym_parse("x + 1"));
  CHECK(sym_equal(s, want) == 1);

  ExprHandle a(sym_parse("x"));
  ExprHandle b(sym_parse("1 - x"));
  ExprHandle sum(sym_add(a, b));
  REQUIRE(sum);
  ExprHandle one(sym_parse("1"));
  CHECK(sym_equal(sum, one) == 1);

  ExprHandle d(sym_sub(a, a));
  REQUIRE(d);
  CHECK(sym_is_zero(d) == 1);

  ExprHandle p(sym_mul(a, a));
  ExprHandle xsq(sym_parse("x^2"));
  CHECK(sym_equal(p, xsq) == 1);
}

TEST_CASE("differentiation") {
  ExprHandle e(sym_parse("sin(k*x)"));
  REQUIRE(e);
  ExprHandle d(sym_diff(e, "x", 1));
  REQUIRE(d);
  ExprHandle want(sym_parse("k*cos(k*x)"));
  CHECK(sym_equal(d, want) == 1);

  ExprHandle d2(sym_diff(e, "x", 2));
  REQUIRE(d2);
  ExprHandle want2(sym_parse("-k^2*sin(k*x)"));
  CHECK(sym_equal(d2, want2) == 1);
}

TEST_CASE("definite integration") {
  ExprHandle e(sym_parse("x^2"));
  ExprHandle lo(sym_parse("0"));
  ExprHandle hi(sym_parse("1"));
  REQUIRE(e);
  ExprHandle v(sym_integrate(e, "x", lo, hi));
  REQUIRE(v);
  ExprHandle want(sym_parse("1/3"));
  CHECK(sym_equal(v, want) == 1);

  // outside the supported class the integral stays held
  ExprHandle hard(sym_parse("exp(x^2)"));
  ExprHandle held(sym_integrate(hard, "x", lo, hi));
  REQUIRE(held);
  CHECK(render(held).find("Int(") == 0);
}

TEST_CASE("substitution and zero decision") {
  ExprHandle e(sym_parse("sin(x)^2 + cos(x)^2 - 1"));
  REQUIRE(e);
  CHECK(sym_is_zero(e) == 1);

  ExprHandle f(sym_parse("x^2 - y"));
  ExprHandle v(sym_parse("3"));
  ExprHandle g(sym_subst(f, "x", v));
  REQUIRE(g);
  ExprHandle want(sym_parse("9 - y"));
  CHECK(sym_equal(g, want) == 1);

  ExprHandle nz(sym_parse("x + 1"));
  CHECK(sym_is_zero(nz) == 0);
}

TEST_CASE("numeric evaluation") {
  ExprHandle e(sym_parse("a*sin(pi/2) + b"));
  REQUIRE(e);
  const char* names[] = {"a", "b"};
  const double values[] = {2.0, 0.5};
  double out = 0.0;
  REQUIRE(sym_eval(e, names, values, 2, &out) == SYM_OK);
  CHECK(out == doctest::Approx(2.5).epsilon(1e-12));

  // unbound symbol reports an error status
  double dummy = 0.0;
  CHECK(sym_eval(e, names, values, 1, &dummy) == SYM_UNBOUND_SYMBOL);
  CHECK(sym_last_status() == SYM_UNBOUND_SYMBOL);
}

TEST_CASE("error paths set status and message") {
  sym_expr* bad = sym_parse("2 +* x");
  CHECK(bad == nullptr);
  CHECK(sym_last_status() == SYM_PARSE_ERROR);
  REQUIRE(sym_last_message() != nullptr);
  CHECK(std::strlen(sym_last_message()) > 0);

  // NULL arguments are rejected, not dereferenced
  CHECK(sym_parse(nullptr) == nullptr);
  CHECK(sym_last_status() == SYM_INVALID_ARGUMENT);
  CHECK(sym_render(nullptr) == nullptr);
  CHECK(sym_last_status() == SYM_INVALID_ARGUMENT);
  CHECK(sym_add(nullptr, nullptr) == nullptr);
  CHECK(sym_diff(nullptr, "x", 1) == nullptr);

  // a successful call clears the sticky status
  ExprHandle ok(sym_parse("1 + 1"));
  REQUIRE(ok);
  CHECK(sym_last_status() == SYM_OK);
}

TEST_CASE("problem runner executes a document") {
  const char* doc =
      "symbols: k generic, e generic\n"
      "unknown: u(t)\n"
      "equation: D(u(t),t) + k*u(t) + e*u(t)^2 = 0\n"
      "initial: u(0) = 1\n"
      "method: perturb\n"
      "param: e\n"
      "order: 1\n";
  char* output = nullptr;
  char* report = nullptr;
  int rc = sym_run_problem(doc, nullptr, nullptr, nullptr, 0, 0, &output, &report);
  REQUIRE(rc == 0);
  REQUIRE(output != nullptr);
  ExprHandle got(sym_parse(output));
  REQUIRE(got);
  ExprHandle want(sym_parse("exp(-k*t) + (e/k)*(exp(-2*k*t) - exp(-k*t))"));
  ExprHandle difference(sym_sub(got, want));
  CHECK(sym_is_zero(difference) == 1);
  REQUIRE(report != nullptr);
  sym_free_string(output);
  sym_free_string(report);
}

TEST_CASE("problem runner rejects malformed documents") {
  const char* doc =
      "unknown: x\n"
      "equation:\n"
      "method: fixedpoint\n"
      "x0: 1\n";
  char* output = nullptr;
  int rc = sym_run_problem(doc, nullptr, nullptr, nullptr, 0, 0, &output, nullptr);
  CHECK(rc == 2);
  CHECK(output == nullptr);
  REQUIRE(sym_last_message() != nullptr);
  CHECK(std::string(sym_last_message()).find("equation") != std::string::npos);
}
