#include "core/pattern.hpp"

namespace symapprox {

namespace {

bool constraint_ok(const Expr& e, WildConstraint c) {
  switch (c) {
    case WildConstraint::Any: return true;
    case WildConstraint::NumberOnly: return is_number(e);
    case WildConstraint::IntegerOnly: return is_integer_number(e);
    case WildConstraint::SymbolOnly: return is_symbol(e);
  }
  return false;
}

bool match_rec(const Expr& e, const Expr& p, Bindings& b) {
  if (p->kind == Kind::Wildcard) {
    if (!constraint_ok(e, p->wild)) return false;
    auto it = b.find(p->name);
    if (it != b.end()) return equal(e, it->second);
    b.emplace(p->name, e);
    return true;
  }
  if (e->kind != p->kind) return false;
  switch (p->kind) {
    case Kind::Number:
      return e->number == p->number;
    case Kind::Symbol:
      return e->name == p->name;
    case Kind::FuncApp:
      return e->func == p->func && match_rec(e->kids[0], p->kids[0], b);
    case Kind::UnknownApp:
      if (e->name != p->name || e->kids.size() != p->kids.size()) return false;
      break;
    case Kind::Deriv:
      if (e->order != p->order) return false;
      break;
    case Kind::Piecewise: {
      if (e->pieces.size() != p->pieces.size()) return false;
      if (!match_rec(e->kids[0], p->kids[0], b)) return false;
      for (size_t i = 0; i < e->pieces.size(); ++i) {
        if (!match_rec(e->pieces[i].lo, p->pieces[i].lo, b)) return false;
        if (!match_rec(e->pieces[i].hi, p->pieces[i].hi, b)) return false;
        if (!match_rec(e->pieces[i].value, p->pieces[i].value, b)) return false;
      }
      return true;
    }
    default:
      break;
  }
  if (e->kids.size() != p->kids.size()) return false;
  for (size_t i = 0; i < e->kids.size(); ++i)
    if (!match_rec(e->kids[i], p->kids[i], b)) return false;
  return true;
}

}  // namespace

std::optional<Bindings> match(const Expr& e, const Expr& pattern) {
  Bindings b;
  if (match_rec(canon(e), canon(pattern), b)) return b;
  return std::nullopt;
}

Expr apply_bindings(const Expr& tmpl, const Bindings& b) {
  Substitution s;
  s.wildcards = b;
  return substitute(tmpl, s);
}

namespace {

Expr rewrite_node(const Expr& e, const std::vector<Rule>& rules, bool& changed);

Expr rewrite_children(const Expr& e, const std::vector<Rule>& rules, bool& changed) {
  switch (e->kind) {
    case Kind::Number:
    case Kind::Symbol:
    case Kind::Wildcard:
      return e;
    case Kind::Piecewise: {
      std::vector<PiecewisePiece> ps;
      ps.reserve(e->pieces.size());
      for (const auto& p : e->pieces)
        ps.push_back({rewrite_node(p.lo, rules, changed),
                      rewrite_node(p.hi, rules, changed),
                      rewrite_node(p.value, rules, changed)});
      return make_piecewise(rewrite_node(e->kids[0], rules, changed), std::move(ps));
    }
    default: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(rewrite_node(k, rules, changed));
      auto n = std::make_shared<ExprNode>();
      n->kind = e->kind;
      n->number = e->number;
      n->name = e->name;
      n->func = e->func;
      n->order = e->order;
      n->wild = e->wild;
      n->kids = std::move(kids);
      return n;
    }
  }
}

Expr rewrite_node(const Expr& e, const std::vector<Rule>& rules, bool& changed) {
  Expr node = canon(rewrite_children(e, rules, changed));
  for (const auto& r : rules) {
    Bindings b;
    if (!match_rec(node, canon(r.lhs), b)) continue;
    if (r.condition && !r.condition(b)) continue;
    changed = true;
    Expr out = r.build ? r.build(b) : apply_bindings(r.rhs, b);
    return canon(out);
  }
  return node;
}

}  // namespace

Expr rewrite_fixpoint(const Expr& e, const std::vector<Rule>& rules, int max_passes) {
  Expr cur = canon(e);
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    Expr next = rewrite_node(cur, rules, changed);
    if (!changed) return next;
    cur = next;
  }
  throw Error(ErrorCode::RewriteBudgetExceeded,
              "rewriting did not reach a fixpoint within " +
                  std::to_string(max_passes) + " passes");
}

}  // namespace symapprox
