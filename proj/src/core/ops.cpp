#include "core/ops.hpp"

#include <cmath>

namespace symapprox {

// from calculus.cpp; substitution resolves held derivatives once their
// operand becomes concrete
Expr diff(const Expr& e, const Expr& var, int order);

FunctionTemplate template_of(const Expr& body_in_var, const std::string& var) {
  Substitution s;
  std::string ph = "@arg";
  s.set(var, sym(ph));
  return FunctionTemplate{ph, substitute(body_in_var, s)};
}

// ---------------------------------------------------------------------------
// substitute
// ---------------------------------------------------------------------------

namespace {

bool replacement_mentions(const Substitution& s, const std::string& name) {
  for (const auto& [k, v] : s.symbols)
    if (!free_of(v, name)) return true;
  for (const auto& [k, v] : s.wildcards)
    if (!free_of(v, name)) return true;
  for (const auto& [k, t] : s.functions)
    if (!free_of(t.body, name)) return true;
  return false;
}

bool is_resolved(const Expr& e) {
  return !contains_kind(e, Kind::UnknownApp) && !contains_kind(e, Kind::Wildcard);
}

Expr subst_rec(const Expr& e, const Substitution& s) {
  switch (e->kind) {
    case Kind::Number:
      return e;
    case Kind::Symbol: {
      auto it = s.symbols.find(e->name);
      return it != s.symbols.end() ? it->second : e;
    }
    case Kind::Wildcard: {
      auto it = s.wildcards.find(e->name);
      return it != s.wildcards.end() ? it->second : e;
    }
    case Kind::Sum:
    case Kind::Product: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(subst_rec(k, s));
      return e->kind == Kind::Sum ? make_sum(std::move(kids))
                                  : make_product(std::move(kids));
    }
    case Kind::Power:
      return make_power(subst_rec(e->kids[0], s), subst_rec(e->kids[1], s));
    case Kind::FuncApp:
      return make_func(e->func, subst_rec(e->kids[0], s));
    case Kind::UnknownApp: {
      std::vector<Expr> args;
      args.reserve(e->kids.size());
      for (const auto& k : e->kids) args.push_back(subst_rec(k, s));
      auto it = s.functions.find(e->name);
      if (it != s.functions.end()) {
        if (args.size() != 1)
          throw Error(ErrorCode::InvalidArgument,
                      "function substitution for '" + e->name +
                          "' requires a single argument");
        Substitution inner;
        inner.set(it->second.placeholder, args[0]);
        return subst_rec(it->second.body, inner);
      }
      return make_unknown(e->name, std::move(args));
    }
    case Kind::Deriv: {
      Expr var = e->kids[1];
      Expr new_var = var;
      if (is_symbol(var)) {
        auto it = s.symbols.find(var->name);
        if (it != s.symbols.end()) {
          if (!is_symbol(it->second))
            throw Error(ErrorCode::SubstitutionIntoBoundVar,
                        "differentiation variable '" + var->name +
                            "' can only be renamed to a symbol");
          new_var = it->second;
        }
      } else if (var->kind == Kind::Wildcard) {
        auto it = s.wildcards.find(var->name);
        if (it != s.wildcards.end()) new_var = it->second;
      }
      Expr inner = subst_rec(e->kids[0], s);
      Expr out = make_deriv(inner, new_var, e->order);
      // a derivative whose operand became concrete is computed on the spot
      if (is_symbol(new_var) && is_resolved(inner) && !equal(inner, e->kids[0]))
        return diff(canon(inner), new_var, e->order);
      return out;
    }
    case Kind::Integral: {
      Expr var = e->kids[1];
      if (is_symbol(var)) {
        if (s.symbols.count(var->name))
          throw Error(ErrorCode::SubstitutionIntoBoundVar,
                      "cannot substitute integration variable '" + var->name + "'");
        if (replacement_mentions(s, var->name))
          throw Error(ErrorCode::SubstitutionIntoBoundVar,
                      "replacement would capture integration variable '" +
                          var->name + "'");
      } else if (var->kind == Kind::Wildcard) {
        auto it = s.wildcards.find(var->name);
        if (it != s.wildcards.end()) var = it->second;
      }
      return make_integral(subst_rec(e->kids[0], s), var, subst_rec(e->kids[2], s),
                           subst_rec(e->kids[3], s));
    }
    case Kind::Piecewise: {
      Expr var = e->kids[0];
      Expr new_var = var;
      if (is_symbol(var)) {
        auto it = s.symbols.find(var->name);
        if (it != s.symbols.end()) new_var = it->second;
      }
      std::vector<PiecewisePiece> ps;
      ps.reserve(e->pieces.size());
      for (const auto& p : e->pieces)
        ps.push_back({subst_rec(p.lo, s), subst_rec(p.hi, s), subst_rec(p.value, s)});
      if (!equal(new_var, var) && is_number(canon(new_var))) {
        // evaluation point: select the piece containing it
        mpq_class x = canon(new_var)->number;
        for (const auto& p : ps) {
          Expr lo = canon(p.lo), hi = canon(p.hi);
          if (!is_number(lo) || !is_number(hi))
            throw Error(ErrorCode::InvalidArgument,
                        "piecewise bounds must be numeric to evaluate");
          if (lo->number <= x && x < hi->number) return p.value;
        }
        return zero();
      }
      if (!is_symbol(new_var) && new_var->kind != Kind::Wildcard)
        throw Error(ErrorCode::InvalidArgument,
                    "piecewise variable can only be renamed or evaluated");
      return make_piecewise(new_var, std::move(ps));
    }
  }
  throw Error(ErrorCode::InternalError, "unreachable in substitute");
}

}  // namespace

Expr substitute(const Expr& e, const Substitution& s) {
  if (s.empty()) return canon(e);
  return canon(subst_rec(e, s));
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

namespace {

// multiply two expanded expressions, distributing over sums
Expr mul_expanded(const Expr& a, const Expr& b) {
  std::vector<Expr> ta = a->kind == Kind::Sum ? a->kids : std::vector<Expr>{a};
  std::vector<Expr> tb = b->kind == Kind::Sum ? b->kids : std::vector<Expr>{b};
  std::vector<Expr> out;
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta)
    for (const auto& y : tb) out.push_back(mul({x, y}));
  return add(std::move(out));
}

Expr expand_rec(const Expr& e) {
  switch (e->kind) {
    case Kind::Number:
    case Kind::Symbol:
    case Kind::Wildcard:
      return e;
    case Kind::Sum: {
      std::vector<Expr> ts;
      ts.reserve(e->kids.size());
      for (const auto& k : e->kids) ts.push_back(expand_rec(k));
      return add(std::move(ts));
    }
    case Kind::Product: {
      Expr acc = one();
      for (const auto& k : e->kids) acc = mul_expanded(acc, expand_rec(k));
      return acc;
    }
    case Kind::Power: {
      Expr b = expand_rec(e->kids[0]);
      Expr x = expand_rec(e->kids[1]);
      auto n = as_small_int(x);
      if (n && *n > 1 && *n <= 64 && b->kind == Kind::Sum) {
        Expr acc = b;
        for (long i = 1; i < *n; ++i) acc = mul_expanded(acc, b);
        return acc;
      }
      return pow(b, x);
    }
    case Kind::FuncApp:
      return canon(make_func(e->func, expand_rec(e->kids[0])));
    case Kind::UnknownApp: {
      std::vector<Expr> args;
      for (const auto& k : e->kids) args.push_back(expand_rec(k));
      return canon(make_unknown(e->name, std::move(args)));
    }
    case Kind::Deriv: {
      Expr inner = expand_rec(e->kids[0]);
      Expr var = e->kids[1];
      if (!is_symbol(var)) return canon(make_deriv(inner, var, e->order));
      std::vector<Expr> ts = inner->kind == Kind::Sum ? inner->kids
                                                      : std::vector<Expr>{inner};
      std::vector<Expr> out;
      for (const auto& t : ts) {
        // pull factors independent of the variable outside
        std::vector<Expr> coef, dep;
        std::vector<Expr> fs = t->kind == Kind::Product ? t->kids
                                                        : std::vector<Expr>{t};
        for (const auto& f : fs)
          (free_of(f, var->name) ? coef : dep).push_back(f);
        if (dep.empty()) continue;  // constant differentiates to zero
        coef.push_back(canon(make_deriv(mul(std::move(dep)), var, e->order)));
        out.push_back(mul(std::move(coef)));
      }
      return add(std::move(out));
    }
    case Kind::Integral: {
      Expr inner = expand_rec(e->kids[0]);
      Expr var = e->kids[1];
      Expr lo = expand_rec(e->kids[2]);
      Expr hi = expand_rec(e->kids[3]);
      if (!is_symbol(var)) return canon(make_integral(inner, var, lo, hi));
      std::vector<Expr> ts = inner->kind == Kind::Sum ? inner->kids
                                                      : std::vector<Expr>{inner};
      std::vector<Expr> out;
      for (const auto& t : ts) {
        std::vector<Expr> coef, dep;
        std::vector<Expr> fs = t->kind == Kind::Product ? t->kids
                                                        : std::vector<Expr>{t};
        for (const auto& f : fs)
          (free_of(f, var->name) ? coef : dep).push_back(f);
        Expr body = dep.empty() ? one() : mul(std::move(dep));
        coef.push_back(canon(make_integral(body, var, lo, hi)));
        out.push_back(mul(std::move(coef)));
      }
      return add(std::move(out));
    }
    case Kind::Piecewise: {
      std::vector<PiecewisePiece> ps;
      for (const auto& p : e->pieces)
        ps.push_back({p.lo, p.hi, expand_rec(p.value)});
      return canon(make_piecewise(e->kids[0], std::move(ps)));
    }
  }
  throw Error(ErrorCode::InternalError, "unreachable in expand");
}

}  // namespace

Expr expand(const Expr& e) { return expand_rec(canon(e)); }

// ---------------------------------------------------------------------------
// eval_numeric
// ---------------------------------------------------------------------------

double eval_numeric(const Expr& e, const std::map<std::string, double>& bindings) {
  switch (e->kind) {
    case Kind::Number:
      return e->number.get_d();
    case Kind::Symbol: {
      auto it = bindings.find(e->name);
      if (it != bindings.end()) return it->second;
      if (e->name == "pi") return M_PI;
      throw Error(ErrorCode::UnboundSymbol, "symbol '" + e->name + "' is not bound");
    }
    case Kind::Sum: {
      double acc = 0;
      for (const auto& k : e->kids) acc += eval_numeric(k, bindings);
      return acc;
    }
    case Kind::Product: {
      double acc = 1;
      for (const auto& k : e->kids) acc *= eval_numeric(k, bindings);
      return acc;
    }
    case Kind::Power: {
      double b = eval_numeric(e->kids[0], bindings);
      double x = eval_numeric(e->kids[1], bindings);
      if (b == 0.0 && x < 0)
        throw Error(ErrorCode::DomainError, "zero raised to a negative power");
      if (b < 0 && x != std::floor(x))
        throw Error(ErrorCode::DomainError,
                    "negative base with non-integer exponent");
      return std::pow(b, x);
    }
    case Kind::FuncApp: {
      double a = eval_numeric(e->kids[0], bindings);
      switch (e->func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Log:
          if (a <= 0) throw Error(ErrorCode::DomainError, "log of a non-positive value");
          return std::log(a);
      }
      break;
    }
    case Kind::Piecewise: {
      double x = eval_numeric(e->kids[0], bindings);
      for (const auto& p : e->pieces) {
        double lo = eval_numeric(p.lo, bindings);
        double hi = eval_numeric(p.hi, bindings);
        if (lo <= x && x < hi) return eval_numeric(p.value, bindings);
      }
      return 0.0;
    }
    case Kind::UnknownApp:
      throw Error(ErrorCode::HeldNode,
                  "cannot evaluate unresolved function '" + e->name + "'");
    case Kind::Deriv:
      throw Error(ErrorCode::HeldNode, "cannot evaluate held derivative");
    case Kind::Integral:
      throw Error(ErrorCode::HeldNode, "cannot evaluate held integral");
    case Kind::Wildcard:
      throw Error(ErrorCode::HeldNode, "cannot evaluate pattern wildcard");
  }
  throw Error(ErrorCode::InternalError, "unreachable in eval_numeric");
}

// ---------------------------------------------------------------------------
// collect_powers
// ---------------------------------------------------------------------------

namespace {

using CoeffVec = std::vector<Expr>;

CoeffVec cp_rec(const Expr& e, const std::string& s, int m) {
  CoeffVec out(m + 1, zero());
  if (free_of(e, s)) {
    out[0] = e;
    return out;
  }
  switch (e->kind) {
    case Kind::Symbol:
      if (m < 1)
        throw Error(ErrorCode::NotPolynomialInSymbol,
                    "degree in '" + s + "' exceeds requested order");
      out[1] = one();
      return out;
    case Kind::Sum: {
      for (const auto& t : e->kids) {
        CoeffVec c = cp_rec(t, s, m);
        for (int i = 0; i <= m; ++i) out[i] = out[i] + c[i];
      }
      return out;
    }
    case Kind::Product: {
      CoeffVec acc(m + 1, zero());
      acc[0] = one();
      for (const auto& f : e->kids) {
        CoeffVec c = cp_rec(f, s, m);
        CoeffVec next(m + 1, zero());
        for (int i = 0; i <= m; ++i) {
          if (is_zero_literal(acc[i])) continue;
          for (int j = 0; i + j <= m; ++j)
            next[i + j] = next[i + j] + acc[i] * c[j];
        }
        acc = std::move(next);
      }
      return acc;
    }
    case Kind::Power: {
      auto n = as_small_int(e->kids[1]);
      if (!n || *n < 0 || !free_of(e->kids[1], s))
        throw Error(ErrorCode::NotPolynomialInSymbol,
                    "non-polynomial power of '" + s + "'");
      CoeffVec base = cp_rec(e->kids[0], s, m);
      CoeffVec acc(m + 1, zero());
      acc[0] = one();
      for (long k = 0; k < *n; ++k) {
        CoeffVec next(m + 1, zero());
        for (int i = 0; i <= m; ++i) {
          if (is_zero_literal(acc[i])) continue;
          for (int j = 0; i + j <= m; ++j)
            next[i + j] = next[i + j] + acc[i] * base[j];
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw Error(ErrorCode::NotPolynomialInSymbol,
                  "expression is not polynomial in '" + s + "'");
  }
}

// maximum degree of s actually present, to detect truncation
int degree_bound(const Expr& e, const std::string& s) {
  if (free_of(e, s)) return 0;
  switch (e->kind) {
    case Kind::Symbol:
      return 1;
    case Kind::Sum: {
      int d = 0;
      for (const auto& t : e->kids) d = std::max(d, degree_bound(t, s));
      return d;
    }
    case Kind::Product: {
      int d = 0;
      for (const auto& f : e->kids) d += degree_bound(f, s);
      return d;
    }
    case Kind::Power: {
      auto n = as_small_int(e->kids[1]);
      if (!n || *n < 0 || !free_of(e->kids[1], s))
        throw Error(ErrorCode::NotPolynomialInSymbol,
                    "non-polynomial power of '" + s + "'");
      return static_cast<int>(*n) * degree_bound(e->kids[0], s);
    }
    default:
      throw Error(ErrorCode::NotPolynomialInSymbol,
                  "expression is not polynomial in '" + s + "'");
  }
}

}  // namespace

std::vector<Expr> collect_powers(const Expr& e, const std::string& s, int max_order) {
  if (max_order < 0)
    throw Error(ErrorCode::InvalidArgument, "max_order must be non-negative");
  Expr x = expand(e);
  if (degree_bound(x, s) > max_order)
    throw Error(ErrorCode::NotPolynomialInSymbol,
                "degree in '" + s + "' exceeds requested order");
  CoeffVec out = cp_rec(x, s, max_order);
  for (auto& c : out) c = canon(c);
  return out;
}

std::string fresh_name(const std::string& base, const std::vector<Expr>& avoid) {
  std::set<std::string> used;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e->kind == Kind::Symbol || e->kind == Kind::UnknownApp ||
        e->kind == Kind::Wildcard)
      used.insert(e->name);
    for (const auto& k : e->kids) walk(k);
    for (const auto& p : e->pieces) {
      walk(p.lo);
      walk(p.hi);
      walk(p.value);
    }
  };
  for (const auto& e : avoid) walk(e);
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

Expr replace_unknown_slots(const Expr& e, const std::string& unknown,
                           const Expr& var, const std::vector<Expr>& slots,
                           ErrorCode violation) {
  if (e->kind == Kind::UnknownApp && e->name == unknown) {
    if (e->kids.size() != 1 || !equal(e->kids[0], var))
      throw Error(violation,
                  "unknown '" + unknown + "' applied to a composed argument");
    return slots[0];
  }
  if (e->kind == Kind::Deriv && e->kids[0]->kind == Kind::UnknownApp &&
      e->kids[0]->name == unknown) {
    const Expr& app = e->kids[0];
    if (app->kids.size() != 1 || !equal(app->kids[0], var) ||
        !equal(e->kids[1], var))
      throw Error(violation, "unknown '" + unknown +
                                 "' differentiated in a foreign variable");
    if (e->order + 1 > static_cast<int>(slots.size()))
      throw Error(violation,
                  "derivative order " + std::to_string(e->order) +
                      " exceeds the supported order " +
                      std::to_string(slots.size() - 1));
    return slots[static_cast<size_t>(e->order)];
  }
  switch (e->kind) {
    case Kind::Number:
    case Kind::Symbol:
    case Kind::Wildcard:
      return e;
    case Kind::Sum: {
      std::vector<Expr> kids;
      for (const auto& k : e->kids)
        kids.push_back(replace_unknown_slots(k, unknown, var, slots, violation));
      return add(std::move(kids));
    }
    case Kind::Product: {
      std::vector<Expr> kids;
      for (const auto& k : e->kids)
        kids.push_back(replace_unknown_slots(k, unknown, var, slots, violation));
      return mul(std::move(kids));
    }
    case Kind::Power:
      return pow(replace_unknown_slots(e->kids[0], unknown, var, slots, violation),
                 replace_unknown_slots(e->kids[1], unknown, var, slots, violation));
    case Kind::FuncApp:
      return canon(make_func(
          e->func, replace_unknown_slots(e->kids[0], unknown, var, slots, violation)));
    case Kind::UnknownApp: {
      std::vector<Expr> args;
      for (const auto& k : e->kids)
        args.push_back(replace_unknown_slots(k, unknown, var, slots, violation));
      return canon(make_unknown(e->name, std::move(args)));
    }
    case Kind::Deriv:
      return canon(make_deriv(
          replace_unknown_slots(e->kids[0], unknown, var, slots, violation),
          e->kids[1], e->order));
    case Kind::Integral:
      return canon(make_integral(
          replace_unknown_slots(e->kids[0], unknown, var, slots, violation),
          e->kids[1],
          replace_unknown_slots(e->kids[2], unknown, var, slots, violation),
          replace_unknown_slots(e->kids[3], unknown, var, slots, violation)));
    case Kind::Piecewise: {
      std::vector<PiecewisePiece> ps;
      for (const auto& p : e->pieces)
        ps.push_back({p.lo, p.hi,
                      replace_unknown_slots(p.value, unknown, var, slots, violation)});
      return canon(make_piecewise(e->kids[0], std::move(ps)));
    }
  }
  throw Error(ErrorCode::InternalError, "unreachable in replace_unknown_slots");
}

}  // namespace symapprox
