#include "core/trig.hpp"

#include "core/ops.hpp"

namespace symapprox {

namespace {

bool is_trig(const Expr& e) {
  return e->kind == Kind::FuncApp && (e->func == Func::Sin || e->func == Func::Cos);
}

// trig power with small integer exponent >= 2
bool is_trig_power(const Expr& e, long& n) {
  if (e->kind != Kind::Power || !is_trig(e->kids[0])) return false;
  auto k = as_small_int(e->kids[1]);
  if (!k || *k < 2) return false;
  n = *k;
  return true;
}

Expr pair_identity(Func fa, const Expr& a, Func fb, const Expr& b) {
  if (fa == Func::Sin && fb == Func::Sin)
    return (cos_(a - b) - cos_(a + b)) / 2;
  if (fa == Func::Cos && fb == Func::Cos)
    return (cos_(a - b) + cos_(a + b)) / 2;
  if (fa == Func::Sin)  // sin(a)*cos(b)
    return (sin_(a + b) + sin_(a - b)) / 2;
  // cos(a)*sin(b)
  return (sin_(b + a) + sin_(b - a)) / 2;
}

// rewrite one trig power or trig pair inside a single term, if any
Expr rewrite_term(const Expr& term, bool& changed) {
  std::vector<Expr> fs =
      term->kind == Kind::Product ? term->kids : std::vector<Expr>{term};

  // integer trig powers first
  for (size_t i = 0; i < fs.size(); ++i) {
    long n = 0;
    if (!is_trig_power(fs[i], n)) continue;
    const Expr& base = fs[i]->kids[0];
    const Expr& a = base->kids[0];
    Expr ident = base->func == Func::Sin ? (1 - cos_(2 * a)) / 2
                                         : (1 + cos_(2 * a)) / 2;
    std::vector<Expr> out;
    for (size_t j = 0; j < fs.size(); ++j)
      if (j != i) out.push_back(fs[j]);
    if (n - 2 == 1)
      out.push_back(base);
    else if (n - 2 > 1)
      out.push_back(pow(base, num(n - 2)));
    out.push_back(ident);
    changed = true;
    return mul(std::move(out));
  }

  // then products of two distinct trig factors
  std::vector<size_t> trig_idx;
  for (size_t i = 0; i < fs.size(); ++i)
    if (is_trig(fs[i])) trig_idx.push_back(i);
  if (trig_idx.size() >= 2) {
    size_t i = trig_idx[0], j = trig_idx[1];
    Expr ident = pair_identity(fs[i]->func, fs[i]->kids[0], fs[j]->func,
                               fs[j]->kids[0]);
    std::vector<Expr> out;
    for (size_t k = 0; k < fs.size(); ++k)
      if (k != i && k != j) out.push_back(fs[k]);
    out.push_back(ident);
    changed = true;
    return mul(std::move(out));
  }
  return term;
}

}  // namespace

Expr linearize_trig(const Expr& e0) {
  Expr e = expand(e0);
  for (int pass = 0; pass < 1000; ++pass) {
    bool changed = false;
    std::vector<Expr> terms =
        e->kind == Kind::Sum ? e->kids : std::vector<Expr>{e};
    std::vector<Expr> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(rewrite_term(t, changed));
    if (!changed) return e;
    e = expand(add(std::move(out)));
  }
  return e;  // budget exhausted: best effort (callers fall back to probing)
}

}  // namespace symapprox
