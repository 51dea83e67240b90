#include "core/calculus.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/ops.hpp"
#include "core/polyfrac.hpp"
#include "core/trig.hpp"

namespace symapprox {

namespace {

Expr diff1(const Expr& e, const Expr& var) {
  if (free_of(e, var)) return zero();
  switch (e->kind) {
    case Kind::Symbol:
      return one();  // must be var itself (free_of handled the rest)
    case Kind::Sum: {
      Expr acc = zero();
      for (const auto& t : e->kids) acc = acc + diff1(t, var);
      return acc;
    }
    case Kind::Product: {
      Expr acc = zero();
      for (size_t i = 0; i < e->kids.size(); ++i) {
        Expr term = diff1(e->kids[i], var);
        if (is_zero_literal(term)) continue;
        for (size_t j = 0; j < e->kids.size(); ++j)
          if (j != i) term = term * e->kids[j];
        acc = acc + term;
      }
      return acc;
    }
    case Kind::Power: {
      const Expr& b = e->kids[0];
      const Expr& x = e->kids[1];
      if (free_of(x, var))
        return x * pow(b, canon(x - one())) * diff1(b, var);
      // general case: d(b^x) = b^x (x' log b + x b'/b)
      return pow(b, x) * (diff1(x, var) * log_(b) + x * diff1(b, var) / b);
    }
    case Kind::FuncApp: {
      Expr da = diff1(e->kids[0], var);
      switch (e->func) {
        case Func::Exp: return e * da;
        case Func::Sin: return cos_(e->kids[0]) * da;
        case Func::Cos: return -sin_(e->kids[0]) * da;
        case Func::Log: return da / e->kids[0];
      }
      break;
    }
    case Kind::UnknownApp:
      if (e->kids.size() == 1 && equal(e->kids[0], var))
        return make_deriv(e, var, 1);
      throw Error(ErrorCode::UnsupportedDerivative,
                  "cannot differentiate unknown '" + e->name +
                      "' through a composed argument");
    case Kind::Deriv:
      if (equal(e->kids[1], var)) return make_deriv(e->kids[0], var, e->order + 1);
      return make_deriv(e, var, 1);  // mixed derivative stays held
    case Kind::Integral: {
      // Leibniz rule with parameter-dependent bounds
      const Expr& f = e->kids[0];
      const Expr& iv = e->kids[1];
      const Expr& lo = e->kids[2];
      const Expr& hi = e->kids[3];
      Expr acc = zero();
      Expr dhi = diff1(hi, var);
      if (!is_zero_literal(canon(dhi))) {
        Substitution s;
        s.set(iv, hi);
        acc = acc + substitute(f, s) * dhi;
      }
      Expr dlo = diff1(lo, var);
      if (!is_zero_literal(canon(dlo))) {
        Substitution s;
        s.set(iv, lo);
        acc = acc - substitute(f, s) * dlo;
      }
      Expr df = canon(diff1(f, var));
      if (!is_zero_literal(df)) acc = acc + integral(df, iv, lo, hi);
      return acc;
    }
    case Kind::Piecewise: {
      std::vector<PiecewisePiece> ps;
      ps.reserve(e->pieces.size());
      for (const auto& p : e->pieces)
        ps.push_back({p.lo, p.hi, canon(diff1(p.value, var))});
      return make_piecewise(e->kids[0], std::move(ps));
    }
    case Kind::Wildcard:
      throw Error(ErrorCode::UnsupportedDerivative,
                  "cannot differentiate a pattern wildcard");
    case Kind::Number:
      break;  // unreachable: free_of already returned
  }
  return zero();
}

}  // namespace

Expr diff(const Expr& e, const Expr& var, int order) {
  if (!is_symbol(var))
    throw Error(ErrorCode::InvalidArgument, "derivative variable must be a symbol");
  if (order < 0)
    throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 0");
  Expr r = canon(e);
  for (int i = 0; i < order; ++i) r = canon(diff1(r, var));
  return r;
}

// ---------------------------------------------------------------------------
// Integration over the exp-trig-polynomial class
// ---------------------------------------------------------------------------

namespace {

// coefficient of var in an argument linear in var, or nullopt
std::optional<std::pair<Expr, Expr>> linear_parts(const Expr& arg,
                                                  const Expr& var) {
  try {
    auto cs = collect_powers(arg, var->name, 1);
    return std::make_pair(cs[0], cs[1]);  // (offset, rate)
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotPolynomialInSymbol) return std::nullopt;
    throw;
  }
}

struct TermClass {
  Expr coeff = one();       // everything free of var
  mpq_class k{0};           // exponent of the bare power of var
  Expr exp_arg;             // argument of the single exp factor (linear in var)
  Expr exp_rate;
  Expr trig_arg;            // argument of the single trig factor (linear in var)
  Expr trig_rate;
  Func trig = Func::Sin;
  bool has_exp = false;
  bool has_trig = false;
};

std::optional<TermClass> classify(const Expr& term, const Expr& var) {
  TermClass tc;
  std::vector<Expr> fs =
      term->kind == Kind::Product ? term->kids : std::vector<Expr>{term};
  for (const auto& f : fs) {
    if (free_of(f, var)) {
      tc.coeff = tc.coeff * f;
      continue;
    }
    if (equal(f, var)) {
      tc.k += 1;
      continue;
    }
    if (f->kind == Kind::Power && equal(f->kids[0], var) &&
        is_number(f->kids[1])) {
      tc.k += f->kids[1]->number;
      continue;
    }
    if (f->kind == Kind::FuncApp) {
      auto parts = linear_parts(f->kids[0], var);
      if (!parts) return std::nullopt;
      const Expr& rate = parts->second;
      if (f->func == Func::Exp) {
        if (tc.has_exp) return std::nullopt;  // canon merges; defensive
        tc.has_exp = true;
        tc.exp_arg = f->kids[0];
        tc.exp_rate = rate;
        continue;
      }
      if (f->func == Func::Sin || f->func == Func::Cos) {
        if (tc.has_trig) return std::nullopt;  // linearization failed upstream
        tc.has_trig = true;
        tc.trig_arg = f->kids[0];
        tc.trig_rate = rate;
        tc.trig = f->func;
        continue;
      }
      return std::nullopt;  // log of the variable inside a product
    }
    return std::nullopt;
  }
  if ((tc.has_exp || tc.has_trig) &&
      (tc.k.get_den() != 1 || tc.k < 0 || !tc.k.get_num().fits_slong_p()))
    return std::nullopt;
  return tc;
}

// antiderivative of x^k exp(exp_arg) trig(trig_arg) by an ansatz in the same
// class; nullopt when the coefficient system degenerates
std::optional<Expr> antiderivative_term(const TermClass& tc, const Expr& var,
                                        SolveReport* report) {
  if (!tc.has_exp && !tc.has_trig) {
    // bare rational power of the variable
    if (tc.k == -1) return canon(tc.coeff * log_(var));
    mpq_class k1 = tc.k + 1;
    return canon(tc.coeff * pow(var, num(tc.k)) * var / num(k1));
  }
  long kk = tc.k.get_num().get_si();
  Expr a = tc.has_exp ? tc.exp_rate : zero();
  const long nA = kk + 1;
  const long n = tc.has_trig ? 2 * nA : nA;
  Matrix m(n, Vector(n, zero()));
  Vector rhs(n, zero());
  if (!tc.has_trig) {
    // d/dx Σ A_j x^j e^g = Σ (a A_j + (j+1) A_{j+1}) x^j e^g
    for (long j = 0; j <= kk; ++j) {
      m[j][j] = a;
      if (j < kk) m[j][j + 1] = num(j + 1);
      if (j == kk) rhs[j] = one();
    }
  } else {
    Expr b = tc.trig_rate;
    auto A = [&](long j) { return j; };
    auto B = [&](long j) { return nA + j; };
    for (long j = 0; j <= kk; ++j) {
      // coefficient of x^j e^g sin(h)
      m[j][A(j)] = a;
      if (j < kk) m[j][A(j + 1)] = num(j + 1);
      m[j][B(j)] = canon(-b);
      if (j == kk && tc.trig == Func::Sin) rhs[j] = one();
      // coefficient of x^j e^g cos(h)
      m[nA + j][A(j)] = b;
      m[nA + j][B(j)] = a;
      if (j < kk) m[nA + j][B(j + 1)] = num(j + 1);
      if (j == kk && tc.trig == Func::Cos) rhs[nA + j] = one();
    }
  }
  Vector sol;
  try {
    std::vector<Expr> generic;
    sol = linear_solve_symbolic(m, rhs, &generic);
    if (report)
      for (const auto& g : generic) report->note_generic(g);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::SingularSystem ||
        err.code() == ErrorCode::AmbiguousPivot) {
      if (report)
        report->warn(std::string(error_code_name(ErrorCode::GenericityViolation)) +
                     ": degenerate antiderivative ansatz (" + err.what() + ")");
      return std::nullopt;
    }
    throw;
  }
  Expr poly_sin = zero(), poly_cos = zero();
  for (long j = 0; j <= kk; ++j) {
    poly_sin = poly_sin + sol[j] * pow(var, num(j));
    if (tc.has_trig) poly_cos = poly_cos + sol[nA + j] * pow(var, num(j));
  }
  Expr body;
  if (tc.has_trig)
    body = poly_sin * sin_(tc.trig_arg) + poly_cos * cos_(tc.trig_arg);
  else
    body = poly_sin;
  if (tc.has_exp) body = body * exp_(tc.exp_arg);
  return canon(tc.coeff * body);
}

std::optional<Expr> try_antiderivative(const Expr& e, const Expr& var,
                                       SolveReport* report) {
  Expr ex = expand(canon(e));
  ex = expand(linearize_trig(ex));
  std::vector<Expr> terms =
      ex->kind == Kind::Sum ? ex->kids : std::vector<Expr>{ex};
  Expr acc = zero();
  for (const auto& t : terms) {
    if (is_zero_literal(t)) continue;
    auto tc = classify(t, var);
    if (!tc) return std::nullopt;
    auto f = antiderivative_term(*tc, var, report);
    if (!f) return std::nullopt;
    acc = acc + *f;
  }
  return canon(acc);
}

bool is_rational_number(const Expr& e) { return is_number(e); }

}  // namespace

Expr integrate_indefinite(const Expr& e, const Expr& var, SolveReport* report) {
  if (!is_symbol(var))
    throw Error(ErrorCode::InvalidArgument, "integration variable must be a symbol");
  auto f = try_antiderivative(e, var, report);
  if (!f)
    throw Error(ErrorCode::UnresolvedIntegral,
                "integrand outside the exp-trig-polynomial class");
  return *f;
}

Expr integrate(const Expr& e, const Expr& var, const Expr& lo, const Expr& hi,
               SolveReport* report) {
  if (!is_symbol(var))
    throw Error(ErrorCode::InvalidArgument, "integration variable must be a symbol");
  Expr body = canon(e);
  Expr clo = canon(lo), chi = canon(hi);
  if (!free_of(clo, var) || !free_of(chi, var))
    throw Error(ErrorCode::InvalidArgument,
                "integration bounds must not involve the variable");
  if (equal(clo, chi) || is_zero_literal(body)) return zero();
  if (contains_kind(body, Kind::Piecewise)) {
    if (is_rational_number(clo) && is_rational_number(chi))
      return integrate_piecewise(body, var, clo, chi, report);
    Expr held = integral(body, var, clo, chi);
    if (report && held->kind == Kind::Integral) report->note_unresolved(held);
    return held;
  }
  auto f = try_antiderivative(body, var, report);
  if (!f) {
    Expr held = integral(body, var, clo, chi);
    if (report && held->kind == Kind::Integral) report->note_unresolved(held);
    return held;
  }
  Substitution at_hi, at_lo;
  at_hi.set(var, chi);
  at_lo.set(var, clo);
  Expr value = substitute(*f, at_hi) - substitute(*f, at_lo);
  return rational_simplify(value);
}

Expr integrate_piecewise(const Expr& e, const Expr& var, const Expr& lo,
                         const Expr& hi, SolveReport* report) {
  Expr clo = canon(lo), chi = canon(hi);
  if (!is_rational_number(clo) || !is_rational_number(chi))
    throw Error(ErrorCode::InvalidArgument,
                "piecewise integration needs rational bounds");
  mpq_class qlo = clo->number, qhi = chi->number;
  if (qlo > qhi) return canon(-integrate_piecewise(e, var, chi, clo, report));
  Expr ex = expand(canon(e));
  std::vector<Expr> terms =
      ex->kind == Kind::Sum ? ex->kids : std::vector<Expr>{ex};
  Expr acc = zero();
  for (const auto& t : terms) {
    // separate piecewise factors (possibly raised to integer powers)
    std::vector<Expr> fs =
        t->kind == Kind::Product ? t->kids : std::vector<Expr>{t};
    std::vector<std::pair<Expr, long>> pw;  // (piecewise node, power)
    std::vector<Expr> rest;
    bool bad = false;
    for (const auto& f : fs) {
      if (f->kind == Kind::Piecewise) {
        pw.push_back({f, 1});
      } else if (f->kind == Kind::Power && f->kids[0]->kind == Kind::Piecewise) {
        auto n = as_small_int(f->kids[1]);
        if (!n || *n < 1) {
          bad = true;
          break;
        }
        pw.push_back({f->kids[0], *n});
      } else {
        rest.push_back(f);
      }
    }
    if (bad) {
      Expr held = integral(t, var, clo, chi);
      if (report && held->kind == Kind::Integral) report->note_unresolved(held);
      acc = acc + held;
      continue;
    }
    // breakpoints from every piecewise factor, clipped to [lo, hi]
    std::set<mpq_class> cuts{qlo, qhi};
    bool held_term = false;
    for (const auto& [node, n] : pw) {
      (void)n;
      if (!equal(node->kids[0], var)) {
        held_term = true;  // piecewise in another variable, value unknown here
        break;
      }
      for (const auto& p : node->pieces) {
        if (!is_number(p.lo) || !is_number(p.hi)) {
          held_term = true;
          break;
        }
        for (const mpq_class& q : {p.lo->number, p.hi->number})
          if (q > qlo && q < qhi) cuts.insert(q);
      }
      if (held_term) break;
    }
    if (held_term) {
      Expr held = integral(t, var, clo, chi);
      if (report && held->kind == Kind::Integral) report->note_unresolved(held);
      acc = acc + held;
      continue;
    }
    std::vector<mpq_class> pts(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      mpq_class mid = (pts[i] + pts[i + 1]) / 2;
      Expr integrand = one();
      for (const auto& f : rest) integrand = integrand * f;
      for (const auto& [node, n] : pw) {
        Expr value = zero();
        for (const auto& p : node->pieces)
          if (p.lo->number <= mid && mid < p.hi->number) {
            value = p.value;
            break;
          }
        integrand = integrand * pow(value, num(static_cast<long>(n)));
      }
      integrand = canon(integrand);
      if (is_zero_literal(integrand)) continue;
      acc = acc + integrate(integrand, var, num(pts[i]), num(pts[i + 1]), report);
    }
  }
  return rational_simplify(acc);
}

namespace {

Expr resolve_rec(const Expr& e, SolveReport* report) {
  // rebuild children first so nested integrals resolve inside out
  std::vector<Expr> kids;
  kids.reserve(e->kids.size());
  bool changed = false;
  for (const auto& kid : e->kids) {
    Expr r = resolve_rec(kid, report);
    changed = changed || r.get() != kid.get();
    kids.push_back(std::move(r));
  }
  Expr node = e;
  if (changed) {
    auto n = std::make_shared<ExprNode>();
    n->kind = e->kind;
    n->number = e->number;
    n->name = e->name;
    n->func = e->func;
    n->order = e->order;
    n->wild = e->wild;
    n->kids = std::move(kids);
    n->pieces = e->pieces;
    node = canon(n);
  }
  if (node->kind == Kind::Integral) {
    const Expr& integrand = node->kids[0];
    if (contains_kind(integrand, Kind::UnknownApp) ||
        contains_kind(integrand, Kind::Wildcard))
      return node;  // not yet concrete; stays held without flagging
    return integrate(integrand, node->kids[1], node->kids[2], node->kids[3],
                     report);
  }
  return node;
}

}  // namespace

Expr resolve_integrals(const Expr& e, SolveReport* report) {
  return canon(resolve_rec(canon(e), report));
}

}  // namespace symapprox
