// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit status when
// any criterion fails.  Tolerances are pinned here, next to the checks that
// use them.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/frechet.hpp"
#include "core/galerkin.hpp"
#include "core/iterate.hpp"
#include "core/newton.hpp"
#include "core/numvalid.hpp"
#include "core/ops.hpp"
#include "core/parse.hpp"
#include "core/polyfrac.hpp"
#include "core/problem.hpp"
#include "core/render.hpp"
#include "core/report.hpp"
#include "core/series.hpp"

using namespace symapprox;

namespace {

constexpr double kQuadTol = 1e-9;        // symbolic sweep vs quadrature
constexpr double kGateauxEps = 1e-5;     // central difference step
constexpr double kGateauxRel = 1e-6;     // relative mismatch allowed
constexpr double kDottie = 0.7390851332; // cos fixed point, good to 1e-9
constexpr double kRk4Factor = 14.0;      // error drop per step halving
constexpr double kFdBvpFactor = 3.6;     // error drop per grid halving
constexpr double kBasisCrossFactor = 1.5;  // sine vs hat deviation ratio
constexpr double kSuiteBudgetSeconds = 60.0;

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

void expect_equal(const Expr& got, const Expr& want, const std::string& what) {
  if (!definitely_equal(got, want))
    throw Failure{what + ": got " + to_plain(got) + ", want " + to_plain(want)};
}

void expect_zero(const Expr& e, const std::string& what) {
  if (is_zero(e).state != ZeroState::Zero)
    throw Failure{what + ": " + to_plain(canon(e)) + " not provably zero"};
}

// --- 1. first-order expansion of the decaying quadratic flow ----------------

const char* kBernoulliDoc =
    "symbols: k generic, e generic\n"
    "unknown: u(t)\n"
    "equation: D(u(t),t) + k*u(t) + e*u(t)^2 = 0\n"
    "initial: u(0) = 1\n"
    "method: perturb\n"
    "param: e\n"
    "order: 1\n";

void criterion_expansion() {
  RunResult r = run_problem(kBernoulliDoc, RunOptions{});
  Expr got = parse(r.output);
  Expr want = parse("exp(-k*t) + (e/k)*(exp(-2*k*t) - exp(-k*t))");
  expect_equal(got, want, "order-1 expansion");
}

// --- 2. rational resummation recovers the exact flow ------------------------

void criterion_resummation() {
  RunOptions opt;
  std::string doc = std::string(kBernoulliDoc);
  doc.replace(doc.find("method: perturb"), 15, "method: pade   ");
  doc += "pade: 0,1\n";
  RunResult r = run_problem(doc, opt);
  Expr got = parse(r.output);
  Expr want = parse("k/(-e + (e + k)*exp(k*t))");
  expect_equal(got, want, "(0,1) resummation");

  // independent oracle: the resummed expression satisfies the equation exactly
  Expr residual_form = parse("D(u(t),t) + k*u(t) + e*u(t)^2");
  Substitution s;
  s.set_func("u", template_of(got, "t"));
  expect_zero(substitute(residual_form, s), "resummation residual");
  // ... and the initial condition
  Substitution at0;
  at0.set("t", zero());
  expect_equal(substitute(got, at0), one(), "resummation initial value");
}

// --- 3. exact Newton trace on the Rosenbrock system --------------------------

void criterion_newton_trace() {
  AlgebraicSystem sys;
  sys.equations = {parse("2*(x - 1) + 4*p*x*(x^2 - y)"), parse("-2*p*(x^2 - y)")};
  sys.vars = {sym("x"), sym("y")};
  sys.x0 = {zero(), zero()};
  auto trace = newton_algebraic(sys, 2);
  expect(trace.size() == 3, "expected three iterates");
  expect_equal(trace[1][0], one(), "first step x");
  expect_equal(trace[1][1], zero(), "first step y");
  expect_equal(trace[2][0], one(), "second step x");
  expect_equal(trace[2][1], one(), "second step y");
}

// --- 4. directional derivative of the energy functional ----------------------

void criterion_directional_derivative() {
  Expr F = parse("Int(D(u(x),x)^2/2 - f(x)*u(x), x, 0, 1)");
  Expr got = frechet_derivative(F, "u", "v");
  Expr want = parse("Int(D(u(x),x)*D(v(x),x) - f(x)*v(x), x, 0, 1)");
  expect_equal(got, want, "energy directional derivative");

  struct Case {
    const char* functional;
    const char* phi;
    const char* h;
  };
  const Case cases[] = {
      {"Int(D(u(x),x)^2/2 - sin(x)*u(x), x, 0, 1)", "x*(1 - x)", "x^2*(1 - x)"},
      {"Int(u(x)^3, x, 0, 1)", "1 + x", "sin(x)"},
      {"Int(exp(u(x)), x, 0, 1)", "x/2", "x*(1 - x)"},
      {"Int(u(x)*D(u(x),x), x, 0, 1)", "sin(x)", "x^2"},
  };
  for (const auto& c : cases) {
    auto [symv, numv] = gateaux_check(parse(c.functional), "u", "x",
                                      parse(c.phi), parse(c.h), {}, kGateauxEps);
    double scale = std::max({1.0, std::fabs(symv), std::fabs(numv)});
    std::ostringstream msg;
    msg << "difference-quotient oracle on " << c.functional << ": symbolic "
        << symv << " vs numeric " << numv;
    expect(std::fabs(symv - numv) <= kGateauxRel * scale, msg.str());
  }
}

// --- 5. quasilinearization: first sweep and projected-backend progress -------

void criterion_quasilinearization() {
  Expr x = sym("x");
  BvpProblem p;
  p.equation = parse("D(u(x),x,2) + (a*D(u(x),x))^2 + 1");
  p.unknown = "u";
  p.var = x;
  p.lo = zero();
  p.hi = one();
  p.bc_lo = zero();
  p.bc_hi = zero();
  p.u0 = zero();
  NewtonResult r1 = newton_functional(p, 1);
  expect(r1.iterates.size() == 2, "expected two iterates");

  // independent oracle by double integration: around u0 = 0 the correction
  // solves h'' = -1 with h(0) = h(1) = 0, so h = Int_0^x Int_0^s (-1) + B*x
  // with B fixed by the right boundary.
  Expr s = sym("s");
  Expr inner = integrate(num(-1), sym("tau"), zero(), s);      // -s
  Expr w = integrate(inner, s, zero(), x);                     // -x^2/2
  Substitution at1;
  at1.set("x", one());
  Expr B = canon(zero() - substitute(w, at1));                 // 1/2
  Expr oracle = canon(w + B * x);
  expect_equal(r1.iterates[1], oracle, "first sweep vs double integration");
  expect_equal(r1.iterates[1], parse("x*(1 - x)/2"), "first sweep closed form");

  // projected backend: with the slope coefficient pinned to 1 the second
  // sweep must sit closer to the dense finite-difference solution
  BvpProblem pg = p;
  pg.equation = parse("D(u(x),x,2) + D(u(x),x)^2 + 1");
  NewtonOptions opts;
  opts.backend = LinearBackend::Galerkin;
  opts.basis = BasisKind::Sine;
  opts.basis_n = 3;
  NewtonResult r2 = newton_functional(pg, 2, opts);
  expect(r2.iterates.size() == 3, "expected three projected iterates");
  auto grid = fd_bvp(parse("-up^2 - 1"), "x", "u", "up", 0.0, 1.0, 0.0, 0.0, 199);
  auto sup_distance = [&](const Expr& e) {
    double worst = 0.0;
    for (const auto& [xv, uv] : grid)
      worst = std::max(worst, std::fabs(eval_numeric(e, {{"x", xv}}) - uv));
    return worst;
  };
  double d1 = sup_distance(r2.iterates[1]);
  double d2 = sup_distance(r2.iterates[2]);
  std::ostringstream msg;
  msg << "projected sweep did not improve: " << d1 << " -> " << d2;
  expect(d2 < d1, msg.str());
}

// --- 6. one fixed-point sweep of the driven decay equation -------------------

void criterion_driven_decay() {
  Expr t = sym("t");
  Expr q = parse("a*sin(w*t) - (a*sin(w*t))^2*u(t)/2");
  OperatorDef op = picard_operator("u", t, num(1, 2), q, zero(), zero());
  Expr u1 = nest(op, zero(), 1);

  // closed form: particular part plus the decaying start transient
  Expr part = parse("-2*a*(2*w*cos(w*t) - sin(w*t))/(1 + 4*w^2)");
  Substitution at0;
  at0.set("t", zero());
  Expr c0 = canon(zero() - substitute(part, at0));
  expect_equal(u1, canon(part + c0 * exp_(num(-1, 2) * t)), "first sweep");

  // diff round trip: the non-decaying part solves y' + y/2 = a*sin(w*t)
  expect_zero(diff(part, t) + part / 2 - parse("a*sin(w*t)"),
              "particular part round trip");

  // quadrature oracle at three parameter points
  struct Pt {
    double a, w, t;
  };
  const Pt pts[] = {{1, 1, 0.5}, {1, 1, 1.0}, {2, 3, 2.0}};
  Expr integrand = parse("a*exp(-(c - s)/2)*sin(w*s)");
  for (const auto& pt : pts) {
    double lhs = eval_numeric(u1, {{"a", pt.a}, {"w", pt.w}, {"t", pt.t}});
    double rhs = quad(integrand, "s", 0.0, pt.t, 1e-12,
                      {{"a", pt.a}, {"w", pt.w}, {"c", pt.t}});
    std::ostringstream msg;
    msg << "sweep vs quadrature at a=" << pt.a << " w=" << pt.w
        << " t=" << pt.t << ": " << lhs << " vs " << rhs;
    expect(std::fabs(lhs - rhs) <= kQuadTol, msg.str());
  }
}

// --- 7. sequence acceleration -------------------------------------------------

void criterion_acceleration() {
  // exact collapse of a geometric-plus-constant sequence
  Expr A = sym("A"), C = sym("C"), r = sym("r");
  Expr s = shanks(canon(A + C), canon(A + C * r), canon(A + C * pow(r, num(2))));
  expect_equal(s, A, "geometric collapse");

  // one accelerated step solves the affine map exactly
  OperatorDef affine{"", sym("x"), parse("x/2 + 1")};
  expect_equal(steffensen(affine, zero(), 0), num(2), "affine map");

  // on the cosine map the accelerated step beats the plain third iterate
  OperatorDef cosine{"", sym("x"), parse("cos(x)")};
  double accel = eval_numeric(steffensen(cosine, zero(), 0), {});
  double plain3 = eval_numeric(nest(cosine, zero(), 3), {});
  std::ostringstream msg;
  msg << "acceleration did not help: |" << accel << " - " << kDottie
      << "| vs |" << plain3 << " - " << kDottie << "|";
  expect(std::fabs(accel - kDottie) < std::fabs(plain3 - kDottie), msg.str());
}

// --- 8. projected elliptic solves ----------------------------------------------

void criterion_projection() {
  Expr x = sym("x");
  InnerProductSpec ip = elliptic_weak_form(one(), zero(), one(), x, zero(), one());

  // uniform load over three sine modes: exact coefficients
  Basis b3 = sine_basis(3, x, zero(), one());
  GalerkinSolution sol = galerkin_elliptic(ip, b3);
  expect(sol.coeffs.size() == 3, "expected three coefficients");
  expect_equal(sol.coeffs[0], parse("4/pi^3"), "mode 1 coefficient");
  expect_equal(sol.coeffs[1], zero(), "mode 2 coefficient");
  expect_equal(sol.coeffs[2], parse("4/(27*pi^3)"), "mode 3 coefficient");

  // the defining orthogonality: a(u_n, w_j) - l(w_j) = 0 for every w_j
  for (const Expr& w : b3.functions) {
    Expr res = resolve_integrals(ip.a_form(sol.approximant, w) - ip.l_form(w));
    expect_zero(res, "projection orthogonality");
  }

  // sup error against the closed-form solution never grows with the basis
  Expr exact = parse("x*(1 - x)/2");
  std::vector<double> sup_err;
  for (int n = 1; n <= 3; ++n) {
    GalerkinSolution s_n = galerkin_elliptic(ip, sine_basis(n, x, zero(), one()));
    double worst = 0.0;
    for (int i = 1; i <= 19; ++i) {
      double xv = i / 20.0;
      worst = std::max(worst, std::fabs(eval_numeric(s_n.approximant, {{"x", xv}}) -
                                        eval_numeric(exact, {{"x", xv}})));
    }
    sup_err.push_back(worst);
  }
  expect(sup_err[1] <= sup_err[0] + 1e-12 && sup_err[2] <= sup_err[1] + 1e-12,
         "sup error grew with basis size");

  // oscillatory load: three hats and three sines are comparably close to the
  // dense finite-difference reference
  Expr load = parse("exp(x)*sin(5*x)");
  InnerProductSpec ip_load =
      elliptic_weak_form(one(), zero(), load, x, zero(), one());
  GalerkinSolution s_sine = galerkin_elliptic(ip_load, b3);
  GalerkinSolution s_hat =
      galerkin_elliptic(ip_load, hat_basis(3, x, zero(), one()));
  auto grid = fd_bvp(parse("-exp(x)*sin(5*x)"), "x", "u", "up", 0.0, 1.0, 0.0,
                     0.0, 199);
  auto deviation = [&](const Expr& e) {
    double worst = 0.0;
    for (const auto& [xv, uv] : grid)
      worst = std::max(worst, std::fabs(eval_numeric(e, {{"x", xv}}) - uv));
    return worst;
  };
  double dev_sine = deviation(s_sine.approximant);
  double dev_hat = deviation(s_hat.approximant);
  std::ostringstream msg;
  msg << "basis deviations too far apart: sine " << dev_sine << ", hat "
      << dev_hat;
  expect(dev_sine <= kBasisCrossFactor * dev_hat &&
             dev_hat <= kBasisCrossFactor * dev_sine,
         msg.str());
}

// --- 9. projected eigenvalues ---------------------------------------------------

void criterion_eigenvalues() {
  Expr x = sym("x");
  InnerProductSpec ip = elliptic_weak_form(one(), zero(), zero(), x, zero(), one());

  // single polynomial bubble: eigenvalue exactly 10, an upper bound for pi^2
  SpectralSolution bubble =
      galerkin_spectral(ip, poly_bubble_basis(1, x, zero(), one()));
  auto exact_bubble = spectral_exact_eigenvalues(bubble);
  expect(exact_bubble.has_value() && exact_bubble->size() == 1,
         "expected one exact bubble eigenvalue");
  expect_equal((*exact_bubble)[0], num(10), "bubble eigenvalue");

  // Rayleigh quotient oracle: a(w,w)/m(w,w) for w = x*(1-x)
  Expr w = parse("x*(1 - x)");
  Expr aww = resolve_integrals(ip.a_form(w, w));
  Expr mww = resolve_integrals(ip.m_form(w, w));
  expect_equal(rational_simplify(aww / mww), num(10), "Rayleigh quotient");
  expect(10.0 >= M_PI * M_PI, "bubble bound below pi^2");

  // two sine modes diagonalize the projected problem: exact pi^2 and 4 pi^2
  SpectralSolution modes = galerkin_spectral(ip, sine_basis(2, x, zero(), one()));
  auto exact_modes = spectral_exact_eigenvalues(modes);
  expect(exact_modes.has_value() && exact_modes->size() == 2,
         "expected two exact sine eigenvalues");
  expect_equal((*exact_modes)[0], parse("pi^2"), "first sine eigenvalue");
  expect_equal((*exact_modes)[1], parse("4*pi^2"), "second sine eigenvalue");
}

// --- 10. randomized property suites ----------------------------------------------

mpq_class rand_rat(std::mt19937& rng, int lo = -6, int hi = 6, int den_max = 4) {
  std::uniform_int_distribution<int> numd(lo, hi);
  std::uniform_int_distribution<int> dend(1, den_max);
  mpq_class q(numd(rng), dend(rng));
  q.canonicalize();
  return q;
}

mpq_class rand_rat_nonzero(std::mt19937& rng) {
  for (;;) {
    mpq_class q = rand_rat(rng);
    if (q != 0) return q;
  }
}

Expr rand_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  switch (pick(rng)) {
    case 0:
      return num(rand_rat(rng));
    case 1: {
      static const char* names[] = {"x", "y", "k"};
      std::uniform_int_distribution<int> s(0, 2);
      return sym(names[s(rng)]);
    }
    case 2:
      return add({rand_expr(rng, depth - 1), rand_expr(rng, depth - 1)});
    case 3:
      return mul({rand_expr(rng, depth - 1), rand_expr(rng, depth - 1)});
    case 4: {
      std::uniform_int_distribution<int> p(2, 3);
      return pow(rand_expr(rng, depth - 1), num(p(rng)));
    }
    case 5:
      return sin_(rand_expr(rng, depth - 1));
    case 6:
      return cos_(rand_expr(rng, depth - 1));
    default:
      return exp_(rand_expr(rng, depth - 1));
  }
}

void criterion_property_suites() {
  auto t_start = std::chrono::steady_clock::now();

  {  // canonical form idempotent and pointer stable
    std::mt19937 rng(831201);
    for (int i = 0; i < 20; ++i) {
      Expr c1 = canon(rand_expr(rng, 4));
      expect(canon(c1).get() == c1.get(), "canonical form not pointer stable");
    }
  }
  {  // parse/render round trip
    std::mt19937 rng(420137);
    for (int i = 0; i < 20; ++i) {
      Expr e = canon(rand_expr(rng, 4));
      std::string text = to_plain(e);
      expect(equal(parse(text), e), "round trip broke on " + text);
    }
  }
  {  // derivative of a definite integral recovers the integrand
    std::mt19937 rng(550921);
    Expr x = sym("x"), t = sym("t");
    std::uniform_int_distribution<int> kdist(0, 2), adist(-2, 2), bdist(1, 3),
        tdist(0, 5);
    for (int i = 0; i < 20; ++i) {
      Expr term = num(rand_rat_nonzero(rng));
      int shape = tdist(rng);
      int k = kdist(rng);
      if (k > 0) term = term * pow(x, num(k));
      if (shape == 1 || shape == 2 || shape == 3) {
        int a = adist(rng);
        if (a != 0) term = term * exp_(num(a) * x);
      }
      if (shape == 2 || shape == 4) term = term * sin_(num(bdist(rng)) * x);
      if (shape == 3 || shape == 5) term = term * cos_(num(bdist(rng)) * x);
      SolveReport rep;
      Expr F = integrate(term, x, zero(), t, &rep);
      expect(rep.unresolved_integrals.empty(), "integral unexpectedly held");
      Substitution to_t;
      to_t.set("x", t);
      expect_zero(diff(F, t) - substitute(term, to_t),
                  "derivative of integral mismatch");
    }
  }
  {  // rational approximants match through order m+n (multiplied out)
    std::mt19937 rng(990407);
    Expr s = sym("s");
    std::uniform_int_distribution<int> mdist(0, 3), ndist(0, 3);
    int done = 0, attempts = 0;
    while (done < 20 && attempts < 100) {
      ++attempts;
      int m = mdist(rng), n = ndist(rng);
      if (m + n == 0) continue;
      Series S{s, m + n, {}};
      S.coeffs.push_back(num(rand_rat_nonzero(rng)));
      for (int k = 1; k <= m + n; ++k) S.coeffs.push_back(num(rand_rat(rng)));
      PadeApproximant pa;
      try {
        pa = pade(S, m, n);
      } catch (const Error& e) {
        expect(e.code() == ErrorCode::SingularPade, "unexpected failure code");
        continue;
      }
      Series num_s = taylor(pa.num, s, zero(), m + n);
      Series den_s = taylor(pa.den, s, zero(), m + n);
      Series residual = series_sub(series_mul(den_s, S), num_s);
      for (int k = 0; k <= m + n; ++k)
        expect_zero(residual.coeff(k), "order matching failed");
      ++done;
    }
    expect(done >= 20, "too many degenerate draws");
  }
  {  // power collection reconstructs polynomials
    std::mt19937 rng(171203);
    Expr x = sym("x"), a = sym("a");
    std::uniform_int_distribution<int> ddist(0, 5), adist(0, 3);
    for (int i = 0; i < 20; ++i) {
      int d = ddist(rng);
      Expr e = zero();
      for (int k = 0; k <= d; ++k) {
        Expr c = num(rand_rat(rng));
        if (adist(rng) == 0) c = c * a;
        e = e + c * pow(x, num(k));
      }
      e = canon(e);
      std::vector<Expr> parts = collect_powers(e, "x", 8);
      Expr recon = zero();
      for (size_t k = 0; k < parts.size(); ++k)
        recon = recon + parts[k] * pow(x, num(static_cast<long>(k)));
      expect_zero(recon - e, "power collection mismatch");
    }
  }
  {  // fourth-order time stepping
    std::mt19937 rng(660318);
    std::uniform_int_distribution<int> ldist(-30, -10), udist(5, 20);
    Expr rhs = parse("l*u");
    for (int i = 0; i < 20; ++i) {
      double lam = ldist(rng) / 10.0;
      double u0 = udist(rng) / 10.0;
      auto coarse = rk4_ivp(rhs, "t", "u", u0, 0.0, 1.0, 100, {{"l", lam}});
      auto fine = rk4_ivp(rhs, "t", "u", u0, 0.0, 1.0, 200, {{"l", lam}});
      double exact = u0 * std::exp(lam);
      double e_coarse = std::fabs(coarse.back().second - exact);
      double e_fine = std::fabs(fine.back().second - exact);
      expect(e_fine > 1e-15 && e_coarse / e_fine >= kRk4Factor,
             "time stepping below fourth order");
    }
  }
  {  // second-order boundary value solver
    std::mt19937 rng(140509);
    std::uniform_int_distribution<int> adist(-20, 20), kdist(1, 2);
    int done = 0;
    while (done < 20) {
      int anum = adist(rng);
      if (anum == 0) continue;
      double A = anum / 10.0;
      int k = kdist(rng);
      std::ostringstream g;
      g << "-(" << anum << "/10)*(" << k << "*pi)^2*sin(" << k << "*pi*x)";
      Expr rhs = parse(g.str());
      auto err = [&](int grid_n) {
        auto rows = fd_bvp(rhs, "x", "u", "up", 0.0, 1.0, 0.0, 0.0, grid_n);
        double worst = 0.0;
        for (const auto& [xv, uv] : rows)
          worst = std::max(worst, std::fabs(uv - A * std::sin(k * M_PI * xv)));
        return worst;
      };
      double e1 = err(50), e2 = err(101);
      expect(e2 > 1e-13 && e1 / e2 >= kFdBvpFactor,
             "boundary solver below second order");
      ++done;
    }
  }

  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  std::ostringstream msg;
  msg << "property suites took " << elapsed << "s";
  expect(elapsed < kSuiteBudgetSeconds, msg.str());
}

struct Criterion {
  const char* name;
  void (*run)();
};

const Criterion kCriteria[] = {
    {"first-order expansion of the decaying quadratic flow", criterion_expansion},
    {"rational resummation recovers the exact flow", criterion_resummation},
    {"exact Newton trace on the Rosenbrock system", criterion_newton_trace},
    {"directional derivative of the energy functional", criterion_directional_derivative},
    {"quasilinearization sweeps: closed form and projected backend", criterion_quasilinearization},
    {"one fixed-point sweep of the driven decay equation", criterion_driven_decay},
    {"sequence acceleration: exact collapse and cosine speedup", criterion_acceleration},
    {"projected elliptic solves: coefficients, orthogonality, loads", criterion_projection},
    {"projected eigenvalues: bubble bound and exact sine modes", criterion_eigenvalues},
    {"randomized property suites within the time budget", criterion_property_suites},
};

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : kCriteria) {
    std::string detail;
    bool ok = false;
    try {
      c.run();
      ok = true;
    } catch (const Failure& f) {
      detail = f.what;
    } catch (const Error& e) {
      detail = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::string line = std::string(ok ? "PASS" : "FAIL") + "  " + c.name;
    if (!ok && !detail.empty()) line += "  [" + detail + "]";
    std::printf("%s\n", line.c_str());
  }
  return failures == 0 ? 0 : 1;
}
