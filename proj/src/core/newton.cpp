#include "core/newton.hpp"

#include <string>
#include <utility>
#include <vector>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/frechet.hpp"
#include "core/linalg.hpp"
#include "core/numvalid.hpp"
#include "core/ops.hpp"
#include "core/polyfrac.hpp"
#include "core/render.hpp"

namespace symapprox {

std::vector<std::vector<Expr>> newton_algebraic(const AlgebraicSystem& sys,
                                                int steps, SolveReport* report) {
  const size_t n = sys.equations.size();
  if (n == 0 || sys.vars.size() != n || sys.x0.size() != n)
    throw Error(ErrorCode::InvalidArgument,
                "newton needs a square system with a matching start point");
  for (const auto& v : sys.vars)
    if (!is_symbol(v))
      throw Error(ErrorCode::InvalidArgument, "unknowns must be symbols");

  std::vector<Expr> current;
  for (const auto& e : sys.x0) current.push_back(canon(e));
  std::vector<std::vector<Expr>> iterates{current};

  // the Jacobian is differentiated once, then evaluated per step
  Matrix jac(n, Vector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      jac[i][j] = diff(sys.equations[i], sys.vars[j]);

  for (int step = 0; step < steps; ++step) {
    Substitution at;
    for (size_t j = 0; j < n; ++j) at.set(sys.vars[j], current[j]);

    Vector residual(n);
    bool all_zero = true;
    for (size_t i = 0; i < n; ++i) {
      residual[i] = rational_simplify(substitute(sys.equations[i], at));
      if (is_zero(residual[i]).state != ZeroState::Zero) all_zero = false;
    }
    if (all_zero) break;  // already a root, exactly

    Matrix jac_at(n, Vector(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        jac_at[i][j] = rational_simplify(substitute(jac[i][j], at));

    std::vector<Expr> generic;
    Vector delta = linear_solve_symbolic(jac_at, residual, &generic);
    if (report)
      for (const auto& g : generic) report->note_generic(g);

    for (size_t j = 0; j < n; ++j)
      current[j] = rational_simplify(current[j] - delta[j]);
    iterates.push_back(current);
    if (report) report->iterations_run = step + 1;
  }
  return iterates;
}

namespace {

// pick a correction name that collides with nothing in the problem
std::string correction_name(const BvpProblem& p) {
  auto used = [&p](const std::string& name) {
    if (name == p.unknown) return true;
    bool found = false;
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
      if (found) return;
      if (e->kind == Kind::UnknownApp && e->name == name) {
        found = true;
        return;
      }
      for (const auto& k : e->kids) walk(k);
    };
    walk(p.equation);
    return found;
  };
  std::string name = "h";
  for (int i = 1; used(name); ++i) name = "h" + std::to_string(i);
  return name;
}

Expr at_point(const Expr& e, const Expr& var, const Expr& point) {
  Substitution s;
  s.set(var, point);
  return rational_simplify(substitute(e, s));
}

}  // namespace

Expr quasilinearize(const BvpProblem& p, const Expr& un,
                    const std::string& correction) {
  Expr lin = canon(p.equation + frechet_derivative(p.equation, p.unknown,
                                                   correction));
  Substitution s;
  s.set_func(p.unknown, template_of(canon(un), p.var->name));
  // derivatives of the now-concrete unknown are computed on substitution
  return rational_simplify(substitute(lin, s));
}

Expr solve_linear_bvp_closed(const Expr& equation, const std::string& unknown,
                             const Expr& var, const Expr& lo, const Expr& hi,
                             const Expr& h_lo, const Expr& h_hi,
                             SolveReport* report) {
  if (!is_symbol(var))
    throw Error(ErrorCode::InvalidArgument, "independent variable must be a symbol");
  Expr eq = canon(equation);
  std::vector<Expr> slots;
  for (int k = 0; k < 3; ++k)
    slots.push_back(sym(fresh_name("slot" + std::to_string(k), {eq, var})));
  Expr flat = rational_simplify(replace_unknown_slots(
      eq, unknown, var, slots, ErrorCode::LinearBackendUnsupported));

  // affine extraction: flat must equal c2·s2 + c1·s1 + c0·s0 + g exactly
  Expr c2 = rational_simplify(diff(flat, slots[2]));
  Expr c1 = rational_simplify(diff(flat, slots[1]));
  Expr c0 = rational_simplify(diff(flat, slots[0]));
  Substitution zero_slots;
  for (const auto& s : slots) zero_slots.set(s, zero());
  Expr g = rational_simplify(substitute(flat, zero_slots));
  Expr rebuilt = c2 * slots[2] + c1 * slots[1] + c0 * slots[0] + g;
  if (is_zero(rational_simplify(flat - rebuilt)).state != ZeroState::Zero)
    throw Error(ErrorCode::LinearBackendUnsupported,
                "equation is not linear in the correction");
  for (const auto& c : {c0, c1, c2}) {
    for (const auto& s : slots)
      if (!free_of(c, s))
        throw Error(ErrorCode::LinearBackendUnsupported,
                    "equation is not linear in the correction");
    if (!free_of(c, var))
      throw Error(ErrorCode::LinearBackendUnsupported,
                  "closed form needs constant coefficients, got " + to_plain(c));
  }

  auto c2_zero = is_zero(c2);
  if (c2_zero.state == ZeroState::Zero)
    throw Error(ErrorCode::LinearBackendUnsupported,
                "second-derivative coefficient vanishes");
  if (c2_zero.state == ZeroState::Unknown && report) report->note_generic(c2);

  // normalized form h'' + P·h' + Q·h = G
  Expr P = rational_simplify(c1 / c2);
  Expr Q = rational_simplify(c0 / c2);
  Expr G = rational_simplify(-g / c2);
  Expr disc = rational_simplify(P * P - num(4) * Q);

  // homogeneous pair y1, y2 and their Wronskian w0·exp(-P·x)
  Expr y1, y2, w0;
  auto disc_zero = is_zero(disc);
  if (disc_zero.state == ZeroState::Zero) {
    Expr m = rational_simplify(num(-1, 2) * P);
    Expr em = is_zero_literal(m) ? one() : exp_(m * var);
    y1 = em;
    y2 = canon(var * em);
    w0 = one();
  } else {
    bool complex_pair = false;
    Expr root;  // sqrt(disc) or sqrt(-disc) for the complex case
    if (auto exact = sqrt_exact(disc)) {
      root = *exact;
    } else {
      double d;
      try {
        d = eval_numeric(disc, {});
      } catch (const Error&) {
        throw Error(ErrorCode::LinearBackendUnsupported,
                    "cannot settle the sign of the discriminant " + to_plain(disc));
      }
      if (d == 0) {
        // numerically double root without an exact proof: refuse rather
        // than build a basis that is only approximately independent
        throw Error(ErrorCode::LinearBackendUnsupported,
                    "discriminant is numerically zero but not provably so");
      }
      complex_pair = d < 0;
      Expr mag = complex_pair ? rational_simplify(-disc) : disc;
      auto exact_mag = sqrt_exact(mag);
      root = exact_mag ? *exact_mag : canon(pow(mag, num(1, 2)));
    }
    if (complex_pair) {
      Expr lam = rational_simplify(num(-1, 2) * P);
      Expr omega = rational_simplify(root / 2);
      Expr grow = is_zero_literal(lam) ? one() : exp_(lam * var);
      y1 = canon(grow * cos_(omega * var));
      y2 = canon(grow * sin_(omega * var));
      w0 = omega;
    } else {
      Expr m1 = rational_simplify((-P - root) / 2);
      Expr m2 = rational_simplify((-P + root) / 2);
      y1 = is_zero_literal(m1) ? one() : exp_(m1 * var);
      y2 = is_zero_literal(m2) ? one() : exp_(m2 * var);
      w0 = root;  // m2 - m1
    }
  }
  Expr w = canon(w0 * (is_zero_literal(canon(P)) ? one() : exp_(-P * var)));

  // particular solution by variation of parameters
  Expr hp = zero();
  if (is_zero(G).state != ZeroState::Zero) {
    try {
      Expr i1 = integrate_indefinite(rational_simplify(y2 * G / w), var, report);
      Expr i2 = integrate_indefinite(rational_simplify(y1 * G / w), var, report);
      hp = rational_simplify(-y1 * i1 + y2 * i2);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::UnresolvedIntegral) throw;
      throw Error(ErrorCode::LinearBackendUnsupported,
                  "load term is outside the integrable class");
    }
  }

  // boundary fit: A·y1 + B·y2 = h - hp at both endpoints
  Matrix bc = {{at_point(y1, var, lo), at_point(y2, var, lo)},
               {at_point(y1, var, hi), at_point(y2, var, hi)}};
  Vector rhs = {rational_simplify(h_lo - at_point(hp, var, lo)),
                rational_simplify(h_hi - at_point(hp, var, hi))};
  std::vector<Expr> generic;
  Vector ab = linear_solve_symbolic(bc, rhs, &generic);
  if (report)
    for (const auto& e : generic) report->note_generic(e);

  return rational_simplify(ab[0] * y1 + ab[1] * y2 + hp);
}

NewtonResult newton_functional(const BvpProblem& p, int steps,
                               const NewtonOptions& opts) {
  NewtonResult out;
  if (!is_symbol(p.var))
    throw Error(ErrorCode::InvalidArgument, "independent variable must be a symbol");
  Expr un = canon(p.u0);
  out.iterates.push_back(un);

  // A start that misses the boundary values can only be repaired by the
  // closed-form backend; Galerkin corrections vanish at the endpoints.
  for (const auto& [point, value] :
       {std::pair{p.lo, p.bc_lo}, std::pair{p.hi, p.bc_hi}}) {
    Expr gap = rational_simplify(at_point(un, p.var, point) - value);
    if (is_zero(gap).state == ZeroState::NonZero &&
        opts.backend == LinearBackend::Galerkin)
      out.report.warn("initial approximation misses the boundary value at " +
                      to_plain(point));
  }

  const std::string corr = correction_name(p);
  for (int step = 0; step < steps; ++step) {
    Expr lin = quasilinearize(p, un, corr);
    Expr h;
    if (opts.backend == LinearBackend::ClosedForm) {
      Expr h_lo = rational_simplify(p.bc_lo - at_point(un, p.var, p.lo));
      Expr h_hi = rational_simplify(p.bc_hi - at_point(un, p.var, p.hi));
      h = solve_linear_bvp_closed(lin, corr, p.var, p.lo, p.hi, h_lo, h_hi,
                                  &out.report);
    } else {
      // weak form of the linearized operator against a vanishing basis
      Substitution zero_corr;
      zero_corr.set_func(corr, template_of(zero(), p.var->name));
      Expr inhom = rational_simplify(substitute(lin, zero_corr));
      InnerProductSpec ip;
      ip.lo = p.lo;
      ip.hi = p.hi;
      ip.a_form = [lin, inhom, corr, &p](const Expr& u, const Expr& v) {
        Substitution s;
        s.set_func(corr, template_of(u, p.var->name));
        Expr op = canon(substitute(lin, s) - inhom);
        return integral(canon(op * v), p.var, p.lo, p.hi);
      };
      ip.l_form = [inhom, &p](const Expr& v) {
        return integral(canon(-inhom * v), p.var, p.lo, p.hi);
      };
      Basis basis;
      switch (opts.basis) {
        case BasisKind::Sine:
          basis = sine_basis(opts.basis_n, p.var, p.lo, p.hi);
          break;
        case BasisKind::PolyBubble:
          basis = poly_bubble_basis(opts.basis_n, p.var, p.lo, p.hi);
          break;
        case BasisKind::Hat:
          basis = hat_basis(opts.basis_n, p.var, p.lo, p.hi);
          break;
      }
      GalerkinSolution gs = galerkin_elliptic(ip, basis);
      out.report.merge(gs.report);
      h = gs.approximant;
    }
    un = rational_simplify(un + h);
    out.iterates.push_back(un);
    out.report.iterations_run = step + 1;

    // midpoint residual of the updated iterate, when it evaluates
    try {
      Substitution s;
      s.set_func(p.unknown, template_of(un, p.var->name));
      Expr res = resolve_integrals(substitute(p.equation, s));
      double mid = (eval_numeric(p.lo, {}) + eval_numeric(p.hi, {})) / 2;
      double value = eval_with_quad(res, {{p.var->name, mid}});
      out.report.residual_samples.push_back({mid, value});
    } catch (const Error&) {
      // symbolic parameters or held nodes: skip the numeric check
    }
  }
  return out;
}

}  // namespace symapprox
