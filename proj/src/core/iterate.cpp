#include "core/iterate.hpp"

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/ops.hpp"
#include "core/polyfrac.hpp"

namespace symapprox {

namespace {

bool has_held_integral(const Expr& e) {
  if (e->kind == Kind::Integral) return true;
  for (const auto& kid : e->kids)
    if (has_held_integral(kid)) return true;
  for (const auto& p : e->pieces)
    if (has_held_integral(p.value)) return true;
  return false;
}

}  // namespace

Expr apply_operator(const OperatorDef& op, const Expr& g, SolveReport* report,
                    bool allow_held) {
  if (!is_symbol(op.var))
    throw Error(ErrorCode::InvalidArgument, "operator variable must be a symbol");
  Substitution s;
  if (op.unknown.empty())
    s.set(op.var, canon(g));
  else
    s.set_func(op.unknown, template_of(canon(g), op.var->name));
  Expr applied = substitute(op.body, s);
  Expr resolved = resolve_integrals(applied, report);
  if (!allow_held && has_held_integral(resolved))
    throw Error(ErrorCode::UnresolvedIntegral,
                "operator application left an unresolved integral");
  return rational_simplify(resolved);
}

Expr nest(const OperatorDef& op, const Expr& x0, int n, SolveReport* report,
          bool allow_held) {
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument, "iterate count must be >= 0");
  Expr x = canon(x0);
  for (int i = 0; i < n; ++i) {
    x = apply_operator(op, x, report, allow_held);
    if (report) report->iterations_run = std::max(report->iterations_run, i + 1);
  }
  return x;
}

std::vector<Expr> nest_list(const OperatorDef& op, const Expr& x0, int n,
                            SolveReport* report, bool allow_held) {
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument, "iterate count must be >= 0");
  std::vector<Expr> out;
  out.reserve(n + 1);
  Expr x = canon(x0);
  out.push_back(x);
  for (int i = 0; i < n; ++i) {
    x = apply_operator(op, x, report, allow_held);
    if (report) report->iterations_run = std::max(report->iterations_run, i + 1);
    out.push_back(x);
  }
  return out;
}

Expr shanks(const Expr& xn, const Expr& xn1, const Expr& xn2) {
  Expr den = canon(xn2 - num(2) * xn1 + xn);
  ZeroResult z = is_zero(den);
  if (z.state == ZeroState::Zero)
    throw Error(ErrorCode::DegenerateSequence,
                "second difference vanishes (constant or arithmetic sequence)");
  if (z.state == ZeroState::Unknown)
    throw Error(ErrorCode::DegenerateSequence,
                "second difference is probably zero (numeric probe undecided)");
  Expr numr = canon(xn2 * xn - xn1 * xn1);
  return rational_simplify(numr / den);
}

Expr steffensen(const OperatorDef& op, const Expr& x0, int n,
                SolveReport* report) {
  Expr y0 = nest(op, x0, n, report);
  Expr y1 = apply_operator(op, y0, report, false);
  Expr y2 = apply_operator(op, y1, report, false);
  return shanks(y0, y1, y2);
}

OperatorDef picard_operator(const std::string& unknown_name, const Expr& t,
                            const Expr& p, const Expr& q, const Expr& t0,
                            const Expr& u0) {
  if (!is_symbol(t))
    throw Error(ErrorCode::InvalidArgument, "time variable must be a symbol");
  if (!free_of(p, t))
    throw Error(ErrorCode::InvalidArgument,
                "integrating-factor kernel needs a constant coefficient");
  std::string tau_name = fresh_name("tau", {q, p, t0, u0, t});
  Expr tau = sym(tau_name);
  Substitution to_tau;
  to_tau.set(t, tau);
  Expr q_tau = substitute(canon(q), to_tau);
  Expr kernel = exp_(-p * (t - tau));
  OperatorDef op;
  op.unknown = unknown_name;
  op.var = t;
  op.body = canon(exp_(-p * (t - t0)) * u0 +
                  integral(kernel * q_tau, tau, t0, t));
  return op;
}

}  // namespace symapprox
