#include "core/perturb.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/ops.hpp"
#include "core/polyfrac.hpp"
#include "core/series.hpp"

namespace symapprox {

namespace {

// degree of an expanded term in eps; nullopt when eps enters through a
// function argument or a non-integer power
std::optional<long> eps_degree(const Expr& t, const std::string& eps) {
  if (free_of(t, eps)) return 0;
  switch (t->kind) {
    case Kind::Symbol:
      return 1;  // not free of eps, so it is eps itself
    case Kind::Power: {
      if (is_symbol(t->kids[0]) && t->kids[0]->name == eps) {
        auto n = as_small_int(t->kids[1]);
        if (n && *n >= 0) return *n;
      }
      return std::nullopt;
    }
    case Kind::Product: {
      long acc = 0;
      for (const auto& k : t->kids) {
        auto d = eps_degree(k, eps);
        if (!d) return std::nullopt;
        acc += *d;
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

// drop expanded terms above the requested order in eps
Expr truncate_eps(const Expr& e, const std::string& eps, int order) {
  Expr x = expand(e);
  std::vector<Expr> terms =
      x->kind == Kind::Sum ? x->kids : std::vector<Expr>{x};
  std::vector<Expr> keep;
  for (const auto& t : terms) {
    auto d = eps_degree(t, eps);
    if (!d)
      throw Error(ErrorCode::NotRegular,
                  "the small parameter enters non-polynomially");
    if (*d <= order) keep.push_back(t);
  }
  return add(std::move(keep));
}

// one term of the expansion carries polynomial-in-t growth against an
// oscillation in t: the signature of secular behavior
bool has_secular_term(const Expr& e, const Expr& t) {
  Expr x = expand(e);
  std::vector<Expr> terms =
      x->kind == Kind::Sum ? x->kids : std::vector<Expr>{x};
  for (const auto& term : terms) {
    std::vector<Expr> fs =
        term->kind == Kind::Product ? term->kids : std::vector<Expr>{term};
    bool poly_growth = false, oscillation = false;
    for (const auto& f : fs) {
      if (equal(f, t)) {
        poly_growth = true;
      } else if (f->kind == Kind::Power && equal(f->kids[0], t)) {
        auto n = as_small_int(f->kids[1]);
        if (n && *n >= 1) poly_growth = true;
      } else if (f->kind == Kind::FuncApp &&
                 (f->func == Func::Sin || f->func == Func::Cos) &&
                 !free_of(f->kids[0], t)) {
        oscillation = true;
      }
    }
    if (poly_growth && oscillation) return true;
  }
  return false;
}

// names w0, w1, ... for the expansion coefficients, dodging collisions
std::vector<std::string> coefficient_names(const PerturbProblem& p, int order) {
  std::vector<std::string> names;
  for (int k = 0; k <= order; ++k) {
    std::string base = p.unknown + std::to_string(k);
    // fresh against the equation and the names picked so far
    std::vector<Expr> avoid{p.equation};
    for (const auto& n : names) avoid.push_back(unknown(n, {p.var}));
    names.push_back(fresh_name(base, avoid));
  }
  return names;
}

}  // namespace

PerturbSolution perturb_solve_ode(const PerturbProblem& p, int order) {
  if (!is_symbol(p.var) || !is_symbol(p.eps))
    throw Error(ErrorCode::InvalidArgument,
                "time variable and small parameter must be symbols");
  if (order < 0)
    throw Error(ErrorCode::InvalidArgument, "expansion order must be >= 0");

  PerturbSolution sol;
  const Expr t = p.var;
  const std::string eps = p.eps->name;
  const std::vector<std::string> names = coefficient_names(p, order);

  // substitute the ansatz sum eps^k w_k(t) and split by powers of eps
  Expr ansatz = zero();
  for (int k = 0; k <= order; ++k)
    ansatz = ansatz + pow(p.eps, num(k)) * unknown(names[k], {t});
  Substitution expandu;
  expandu.set_func(p.unknown, template_of(canon(ansatz), t->name));
  Expr full = truncate_eps(substitute(p.equation, expandu), eps, order);
  std::vector<Expr> rows = collect_powers(full, eps, order);

  for (int k = 0; k <= order; ++k) {
    Substitution lower;
    for (int j = 0; j < k; ++j)
      lower.set_func(names[j], template_of(sol.coeffs[j], t->name));
    Expr row = rational_simplify(substitute(rows[k], lower));
    if (is_zero(row).state == ZeroState::Zero) {
      // no constraint at this order: the initial value is all there is
      sol.coeffs.push_back(k == 0 ? canon(p.u_init) : zero());
      continue;
    }

    // the row must be linear with constant coefficients: a1·w' + a0·w + b = 0
    std::vector<Expr> slots{sym(fresh_name("slot0", {row, t})),
                            sym(fresh_name("slot1", {row, t}))};
    Expr flat = rational_simplify(
        replace_unknown_slots(row, names[k], t, slots, ErrorCode::NotRegular));
    Expr a1 = rational_simplify(diff(flat, slots[1]));
    Expr a0 = rational_simplify(diff(flat, slots[0]));
    Substitution zero_slots;
    zero_slots.set(slots[0], zero()).set(slots[1], zero());
    Expr b = rational_simplify(substitute(flat, zero_slots));
    Expr rebuilt = a1 * slots[1] + a0 * slots[0] + b;
    if (is_zero(rational_simplify(flat - rebuilt)).state != ZeroState::Zero)
      throw Error(ErrorCode::NotRegular,
                  "order-" + std::to_string(k) + " problem is not linear");
    for (const auto& c : {a1, a0}) {
      for (const auto& s : slots)
        if (!free_of(c, s))
          throw Error(ErrorCode::NotRegular,
                      "order-" + std::to_string(k) + " problem is not linear");
      if (!free_of(c, t))
        throw Error(ErrorCode::NotRegular,
                    "the expansion cascade needs constant coefficients");
    }
    auto a1_zero = is_zero(a1);
    if (a1_zero.state == ZeroState::Zero)
      throw Error(ErrorCode::NotRegular,
                  "order-" + std::to_string(k) +
                      " equation loses its derivative term");
    if (a1_zero.state != ZeroState::NonZero || a1_zero.generic)
      sol.report.note_generic(a1);

    // w' + pc·w = r, solved by the integrating factor from t0
    Expr pc = rational_simplify(a0 / a1);
    Expr r = rational_simplify(-b / a1);
    Expr init = k == 0 ? canon(p.u_init) : zero();
    Expr wk = is_zero_literal(init)
                  ? zero()
                  : rational_simplify(exp_(-pc * (t - p.t0)) * init);
    if (is_zero(r).state != ZeroState::Zero) {
      Expr tau = sym(fresh_name("tau", {r, t, p.t0, pc}));
      Substitution shift;
      shift.set(t, tau);
      Expr integrand = canon(exp_(-pc * (t - tau)) * substitute(r, shift));
      Expr part = integrate(integrand, tau, p.t0, t, &sol.report);
      if (contains_kind(part, Kind::Integral)) {
        if (k == 0)
          throw Error(ErrorCode::UnresolvedIntegral,
                      "the order-0 problem has no closed-form solution");
        sol.report.warn("the order-" + std::to_string(k) +
                        " integral stayed unresolved; series truncated at order " +
                        std::to_string(k - 1));
        break;
      }
      wk = rational_simplify(wk + part);
    }
    if (k >= 1 && has_secular_term(wk, t))
      sol.report.warn("secular growth (t times an oscillation) at order " +
                      std::to_string(k));
    sol.coeffs.push_back(wk);
  }

  sol.achieved_order = static_cast<int>(sol.coeffs.size()) - 1;
  sol.report.iterations_run = sol.achieved_order;
  Expr total = zero();
  for (size_t k = 0; k < sol.coeffs.size(); ++k)
    total = total + pow(p.eps, num(static_cast<long>(k))) * sol.coeffs[k];
  sol.truncated = rational_simplify(total);
  return sol;
}

AlgebraicPerturbSolution perturb_solve_algebraic(const Expr& f, const Expr& x,
                                                 const Expr& eps,
                                                 const Expr& root0, int order) {
  if (!is_symbol(x) || !is_symbol(eps))
    throw Error(ErrorCode::InvalidArgument,
                "unknown and small parameter must be symbols");
  if (order < 0)
    throw Error(ErrorCode::InvalidArgument, "expansion order must be >= 0");

  AlgebraicPerturbSolution sol;
  Expr eq = canon(f);
  Substitution base;
  base.set(x, canon(root0)).set(eps, zero());

  Expr residual0 = rational_simplify(substitute(eq, base));
  auto r0 = is_zero(residual0);
  if (r0.state == ZeroState::NonZero)
    throw Error(ErrorCode::InvalidArgument,
                "the starting value does not solve the unperturbed equation");
  if (r0.state == ZeroState::Unknown)
    sol.report.warn("could not verify that the starting value solves the "
                    "unperturbed equation");

  Expr fp0 = rational_simplify(substitute(diff(eq, x), base));
  auto simple = is_zero(fp0);
  if (simple.state == ZeroState::Zero)
    throw Error(ErrorCode::DegenerateRoot,
                "the unperturbed root is not simple (f_x vanishes there)");
  if (simple.state != ZeroState::NonZero || simple.generic)
    sol.report.note_generic(fp0);

  sol.coeffs.push_back(canon(root0));
  Expr partial = canon(root0);
  for (int k = 1; k <= order; ++k) {
    Substitution at;
    at.set(x, partial);
    Expr residual = substitute(eq, at);
    Series ser = taylor(residual, eps, zero(), k);
    Expr ck = rational_simplify(-ser.coeff(k) / fp0);
    sol.coeffs.push_back(ck);
    partial = rational_simplify(partial + ck * pow(eps, num(k)));
  }
  sol.truncated = partial;
  return sol;
}

}  // namespace symapprox
