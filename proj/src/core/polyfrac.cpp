#include "core/polyfrac.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>

#include "core/ops.hpp"
#include "core/trig.hpp"

namespace symapprox {

// ---------------------------------------------------------------------------
// polynomial arithmetic
// ---------------------------------------------------------------------------

namespace {

void add_term(Poly& p, const Monomial& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto it = p.terms.find(m);
  if (it == p.terms.end()) {
    p.terms.emplace(m, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) p.terms.erase(it);
  }
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [k, e] : b) {
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, e);
    } else {
      it->second += e;
      if (sgn(it->second) == 0) out.erase(it);
    }
  }
  return out;
}

// lexicographic monomial order compatible with multiplication
int mono_cmp_lex(const Monomial& a, const Monomial& b) {
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    int ka = ia != a.end() ? ia->first : INT_MAX;
    int kb = ib != b.end() ? ib->first : INT_MAX;
    if (ka < kb) {
      // kernel ka present only in a: its exponent decides against implicit 0
      int s = sgn(ia->second);
      return s > 0 ? 1 : -1;
    }
    if (kb < ka) {
      int s = sgn(ib->second);
      return s > 0 ? -1 : 1;
    }
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c > 0 ? 1 : -1;
    ++ia;
    ++ib;
  }
  return 0;
}

const std::pair<const Monomial, mpq_class>& leading_term(const Poly& p) {
  auto best = p.terms.begin();
  for (auto it = std::next(p.terms.begin()); it != p.terms.end(); ++it)
    if (mono_cmp_lex(it->first, best->first) > 0) best = it;
  return *best;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
  // all exponents assumed integer and non-negative here
  for (const auto& [k, e] : d) {
    auto it = m.find(k);
    if (it == m.end() || cmp(it->second, e) < 0) return false;
  }
  return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial out = m;
  for (const auto& [k, e] : d) {
    auto it = out.find(k);
    it->second -= e;
    if (sgn(it->second) == 0) out.erase(it);
  }
  return out;
}

bool all_integer_exponents(const Poly& p) {
  for (const auto& [m, c] : p.terms)
    for (const auto& [k, e] : m)
      if (e.get_den() != 1) return false;
  return true;
}

bool all_nonneg_small_exponents(const Poly& p) {
  for (const auto& [m, c] : p.terms)
    for (const auto& [k, e] : m)
      if (e.get_den() != 1 || sgn(e) < 0 || !e.get_num().fits_slong_p()) return false;
  return true;
}

mpq_class rational_content(const Poly& p) {
  // gcd of numerators over lcm of denominators; positive
  mpz_class gn(0), ld(1);
  for (const auto& [m, c] : p.terms) {
    mpz_class n = abs(c.get_num());
    mpz_gcd(gn.get_mpz_t(), gn.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(ld.get_mpz_t(), ld.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (gn == 0) return mpq_class(1);
  mpq_class out(gn, ld);
  out.canonicalize();
  return out;
}

}  // namespace

Poly poly_const(const mpq_class& c) {
  Poly p;
  if (sgn(c) != 0) p.terms.emplace(Monomial{}, c);
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) add_term(out, m, c);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) add_term(out, m, -c);
  return out;
}

Poly poly_neg(const Poly& a) {
  Poly out;
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, -c);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) add_term(out, mono_mul(ma, mb), ca * cb);
  return out;
}

Poly poly_scale(const Poly& a, const mpq_class& c) {
  Poly out;
  if (sgn(c) == 0) return out;
  for (const auto& [m, k] : a.terms) out.terms.emplace(m, k * c);
  return out;
}

Poly poly_pow(const Poly& a, unsigned long n) {
  Poly out = poly_const(1);
  Poly base = a;
  while (n > 0) {
    if (n & 1ul) out = poly_mul(out, base);
    n >>= 1;
    if (n > 0) base = poly_mul(base, base);
  }
  return out;
}

// ---------------------------------------------------------------------------
// expression -> fraction
// ---------------------------------------------------------------------------

int KernelTable::id(const Expr& k) {
  auto it = index.find(k);
  if (it != index.end()) return it->second;
  int i = static_cast<int>(kernels.size());
  kernels.push_back(k);
  index.emplace(k, i);
  return i;
}

namespace {

Poly mono_poly(int kernel, const mpq_class& e) {
  Poly p;
  Monomial m;
  if (sgn(e) != 0) m.emplace(kernel, e);
  p.terms.emplace(std::move(m), mpq_class(1));
  return p;
}

Fraction frac_const(const mpq_class& c) { return {poly_const(c), poly_const(1)}; }

Fraction frac_mul(const Fraction& a, const Fraction& b) {
  return {poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
}

Fraction frac_add(const Fraction& a, const Fraction& b) {
  return {poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
          poly_mul(a.den, b.den)};
}

Fraction frac_invert(const Fraction& a) {
  if (a.num.is_zero())
    throw Error(ErrorCode::DomainError, "division by a structurally zero expression");
  return {a.den, a.num};
}

Fraction frac_pow_int(const Fraction& a, long n) {
  if (n == 0) return frac_const(1);
  Fraction base = n > 0 ? a : frac_invert(a);
  unsigned long k = n > 0 ? static_cast<unsigned long>(n)
                          : static_cast<unsigned long>(-(n + 1)) + 1ul;
  return {poly_pow(base.num, k), poly_pow(base.den, k)};
}

Fraction convert(const Expr& e, KernelTable& kt);

// multiplicative decomposition shared by exp(arg) and base^arg: the argument
// splits into rational-coefficient pieces, each contributing one kernel
Fraction decompose_exponent(const Expr& arg,
                            const std::function<Fraction(const Expr& unit,
                                                         const mpq_class& coeff)>& piece) {
  std::vector<Expr> terms =
      arg->kind == Kind::Sum ? arg->kids : std::vector<Expr>{arg};
  Fraction acc = frac_const(1);
  for (const auto& t : terms) {
    if (is_number(t)) {
      acc = frac_mul(acc, piece(one(), t->number));
      continue;
    }
    mpq_class c(1);
    Expr unit = t;
    if (t->kind == Kind::Product && !t->kids.empty() && is_number(t->kids[0])) {
      c = t->kids[0]->number;
      if (t->kids.size() == 2) {
        unit = t->kids[1];
      } else {
        std::vector<Expr> rest(t->kids.begin() + 1, t->kids.end());
        unit = canon(make_product(std::move(rest)));
      }
    }
    acc = frac_mul(acc, piece(unit, c));
  }
  return acc;
}

Fraction convert(const Expr& e, KernelTable& kt) {
  switch (e->kind) {
    case Kind::Number:
      return frac_const(e->number);
    case Kind::Symbol:
      return {mono_poly(kt.id(e), 1), poly_const(1)};
    case Kind::Sum: {
      Fraction acc = frac_const(0);
      for (const auto& t : e->kids) acc = frac_add(acc, convert(t, kt));
      return acc;
    }
    case Kind::Product: {
      Fraction acc = frac_const(1);
      for (const auto& f : e->kids) acc = frac_mul(acc, convert(f, kt));
      return acc;
    }
    case Kind::FuncApp:
      if (e->func == Func::Exp) {
        return decompose_exponent(
            e->kids[0], [&kt](const Expr& unit, const mpq_class& c) -> Fraction {
              Expr kern = is_one_literal(unit)
                              ? canon(make_func(Func::Exp, one()))
                              : canon(make_func(Func::Exp, unit));
              return {mono_poly(kt.id(kern), c), poly_const(1)};
            });
      }
      return {mono_poly(kt.id(e), 1), poly_const(1)};
    case Kind::Power: {
      const Expr& base = e->kids[0];
      const Expr& expo = e->kids[1];
      if (is_number(expo)) {
        const mpq_class& q = expo->number;
        if (q.get_den() == 1 && q.get_num().fits_slong_p())
          return frac_pow_int(convert(base, kt), q.get_num().get_si());
        // fractional power: atoms keep their kernel with rational exponent,
        // composites become kernels as a whole
        if (base->kind == Kind::Symbol || base->kind == Kind::FuncApp ||
            base->kind == Kind::UnknownApp || base->kind == Kind::Deriv ||
            base->kind == Kind::Integral) {
          if (base->kind == Kind::FuncApp && base->func == Func::Exp)
            throw Error(ErrorCode::InternalError,
                        "exp power should have been folded by canon");
          return {mono_poly(kt.id(base), q), poly_const(1)};
        }
        return {mono_poly(kt.id(e), 1), poly_const(1)};
      }
      // symbolic exponent: decompose multiplicatively, b^(n+1) -> b^n * b
      return decompose_exponent(
          expo, [&](const Expr& unit, const mpq_class& c) -> Fraction {
            if (is_one_literal(unit)) {
              // rational part of the exponent applies to the base directly
              if (c.get_den() == 1 && c.get_num().fits_slong_p())
                return frac_pow_int(convert(base, kt), c.get_num().get_si());
              Expr kern = canon(make_power(base, num(c)));
              if (kern->kind == Kind::Number) return frac_const(kern->number);
              return {mono_poly(kt.id(kern), 1), poly_const(1)};
            }
            Expr kern = canon(make_power(base, unit));
            if (kern->kind == Kind::Number) return frac_const(kern->number);
            if (kern->kind == Kind::Power)
              return {mono_poly(kt.id(kern), c), poly_const(1)};
            // canon may fold the power into something simpler
            return frac_pow_int(convert(kern, kt), 1);
          });
    }
    case Kind::UnknownApp:
    case Kind::Deriv:
    case Kind::Integral:
    case Kind::Piecewise:
    case Kind::Wildcard:
      return {mono_poly(kt.id(e), 1), poly_const(1)};
  }
  throw Error(ErrorCode::InternalError, "unreachable in to_fraction");
}

}  // namespace

Fraction to_fraction(const Expr& e, KernelTable& kt) { return convert(canon(e), kt); }

Expr poly_to_expr(const Poly& p, const KernelTable& kt) {
  if (p.terms.empty()) return zero();
  std::vector<Expr> terms;
  terms.reserve(p.terms.size());
  for (const auto& [m, c] : p.terms) {
    std::vector<Expr> fs;
    fs.push_back(num(c));
    for (const auto& [k, e] : m) {
      const Expr& kern = kt.kernels[static_cast<size_t>(k)];
      if (kern->kind == Kind::FuncApp && kern->func == Func::Exp) {
        fs.push_back(exp_(mul({num(e), kern->kids[0]})));
      } else if (e == 1) {
        fs.push_back(kern);
      } else {
        fs.push_back(pow(kern, num(e)));
      }
    }
    terms.push_back(mul(std::move(fs)));
  }
  return add(std::move(terms));
}

// ---------------------------------------------------------------------------
// gcd (multivariate, primitive Euclid on a main variable)
// ---------------------------------------------------------------------------

namespace {

// view as univariate in kernel v: degree -> coefficient polynomial
std::map<long, Poly> univariate(const Poly& p, int v) {
  std::map<long, Poly> out;
  for (const auto& [m, c] : p.terms) {
    long d = 0;
    Monomial rest = m;
    auto it = rest.find(v);
    if (it != rest.end()) {
      d = it->second.get_num().get_si();
      rest.erase(it);
    }
    add_term(out[d], rest, c);
  }
  return out;
}

Poly from_univariate(const std::map<long, Poly>& u, int v) {
  Poly out;
  for (const auto& [d, cp] : u) {
    Monomial shift;
    if (d != 0) shift.emplace(v, mpq_class(d));
    for (const auto& [m, c] : cp.terms) add_term(out, mono_mul(m, shift), c);
  }
  return out;
}

long degree_in(const std::map<long, Poly>& u) {
  long d = -1;
  for (const auto& [k, p] : u)
    if (!p.is_zero()) d = std::max(d, k);
  return d;
}

std::set<int> kernels_of(const Poly& p) {
  std::set<int> out;
  for (const auto& [m, c] : p.terms)
    for (const auto& [k, e] : m) out.insert(k);
  return out;
}

Poly make_primitive(const Poly& p);

// content of p viewed as univariate in v: gcd of the coefficient polynomials
Poly content_in(const std::map<long, Poly>& u) {
  Poly g;
  for (const auto& [d, cp] : u) {
    if (cp.is_zero()) continue;
    g = g.is_zero() ? cp : poly_gcd(g, cp);
    if (g.is_constant()) break;
  }
  if (g.is_zero()) return poly_const(1);
  return make_primitive(g);
}

// pseudo-remainder of a by b in variable v
std::map<long, Poly> pseudo_rem(std::map<long, Poly> a, const std::map<long, Poly>& b,
                                long db) {
  const Poly& lb = b.at(db);
  long da = degree_in(a);
  while (da >= db && da >= 0) {
    Poly la;
    auto it = a.find(da);
    if (it != a.end()) la = it->second;
    if (la.is_zero()) {
      a.erase(da);
      da = degree_in(a);
      continue;
    }
    // a := lb*a - la * x^(da-db) * b
    std::map<long, Poly> next;
    for (const auto& [d, p] : a) {
      if (p.is_zero()) continue;
      next[d] = poly_mul(lb, p);
    }
    for (const auto& [d, p] : b) {
      if (p.is_zero()) continue;
      long nd = d + (da - db);
      Poly sub = poly_mul(la, p);
      auto jt = next.find(nd);
      if (jt == next.end()) {
        next[nd] = poly_neg(sub);
      } else {
        jt->second = poly_sub(jt->second, sub);
        if (jt->second.is_zero()) next.erase(jt);
      }
    }
    a = std::move(next);
    long nda = degree_in(a);
    if (nda >= da && nda >= db)
      throw Error(ErrorCode::InternalError, "pseudo-division failed to reduce degree");
    da = nda;
  }
  return a;
}

Poly make_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpq_class c = rational_content(p);
  // positive leading coefficient (lex order)
  if (sgn(leading_term(p).second) < 0) c = -c;
  Poly out;
  for (const auto& [m, k] : p.terms) out.terms.emplace(m, k / c);
  return out;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? b : make_primitive(b);
  if (b.is_zero()) return make_primitive(a);
  if (!all_nonneg_small_exponents(a) || !all_nonneg_small_exponents(b))
    return poly_const(1);
  if (a.is_constant() || b.is_constant()) return poly_const(1);
  std::set<int> ka = kernels_of(a), kb = kernels_of(b);
  // gcd of polynomials in disjoint variables is a constant
  std::set<int> common;
  std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                        std::inserter(common, common.begin()));
  if (common.empty()) return poly_const(1);
  int v = *common.begin();
  auto ua = univariate(a, v);
  auto ub = univariate(b, v);
  Poly ca = content_in(ua);
  Poly cb = content_in(ub);
  Poly cg = poly_gcd(ca, cb);
  // primitive parts
  auto divc = [](std::map<long, Poly>& u, const Poly& c) {
    if (c.is_constant()) {
      mpq_class k = c.constant_value();
      for (auto& [d, p] : u) p = poly_scale(p, 1 / k);
      return;
    }
    for (auto& [d, p] : u) {
      auto q = poly_divide_exact(p, c);
      if (!q) throw Error(ErrorCode::InternalError, "content division failed");
      p = *q;
    }
  };
  divc(ua, ca);
  divc(ub, cb);
  long da = degree_in(ua), db = degree_in(ub);
  if (da < db) {
    std::swap(ua, ub);
    std::swap(da, db);
  }
  while (true) {
    if (db < 0) break;
    if (db == 0) {
      // primitive nonzero constant (in v) divides only via content: gcd is cg
      return make_primitive(cg);
    }
    auto r = pseudo_rem(ua, ub, db);
    long dr = degree_in(r);
    if (dr < 0) break;  // ub divides: gcd = ub
    Poly rp = from_univariate(r, v);
    rp = make_primitive(rp);
    // strip content in v
    auto ur = univariate(rp, v);
    Poly cr = content_in(ur);
    divc(ur, cr);
    ua = std::move(ub);
    da = db;
    ub = std::move(ur);
    db = degree_in(ub);
  }
  Poly g = from_univariate(ub, v);
  return make_primitive(poly_mul(cg, g));
}

std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (b.is_constant()) return poly_scale(a, 1 / b.constant_value());
  if (!all_integer_exponents(a) || !all_integer_exponents(b)) return std::nullopt;
  Poly rem = a;
  Poly quot;
  const auto& [lbm, lbc] = leading_term(b);
  int guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 100000) return std::nullopt;
    const auto& [lrm, lrc] = leading_term(rem);
    if (!mono_divides(lbm, lrm)) return std::nullopt;
    Monomial qm = mono_div(lrm, lbm);
    mpq_class qc = lrc / lbc;
    add_term(quot, qm, qc);
    Poly step;
    for (const auto& [m, c] : b.terms) add_term(step, mono_mul(m, qm), c * qc);
    rem = poly_sub(rem, step);
  }
  return quot;
}

// ---------------------------------------------------------------------------
// quotient normalization
// ---------------------------------------------------------------------------

Expr simplify_quotient(Poly num_p, Poly den_p, const KernelTable& kt) {
  if (den_p.is_zero())
    throw Error(ErrorCode::DomainError, "zero denominator");
  if (num_p.is_zero()) return zero();

  // cancel the common monomial factor (minimum exponent per kernel over all
  // monomials of both polynomials; zero for kernels absent anywhere)
  std::set<int> all = kernels_of(num_p);
  for (int k : kernels_of(den_p)) all.insert(k);
  Monomial shift;
  for (int k : all) {
    std::optional<mpq_class> mn;
    auto scan = [&](const Poly& p) {
      for (const auto& [m, c] : p.terms) {
        auto it = m.find(k);
        mpq_class e = it == m.end() ? mpq_class(0) : it->second;
        if (!mn || cmp(e, *mn) < 0) mn = e;
      }
    };
    scan(num_p);
    scan(den_p);
    if (mn && sgn(*mn) != 0) shift.emplace(k, *mn);
  }
  if (!shift.empty()) {
    Monomial inv;
    for (const auto& [k, e] : shift) inv.emplace(k, -e);
    auto apply = [&](Poly& p) {
      Poly out;
      for (const auto& [m, c] : p.terms) out.terms.emplace(mono_mul(m, inv), c);
      p = std::move(out);
    };
    apply(num_p);
    apply(den_p);
  }

  // rational content of the denominator and positive leading coefficient
  mpq_class lam = rational_content(den_p);
  if (sgn(leading_term(den_p).second) < 0) lam = -lam;
  num_p = poly_scale(num_p, 1 / lam);
  den_p = poly_scale(den_p, 1 / lam);

  if (den_p.is_constant())
    return poly_to_expr(poly_scale(num_p, 1 / den_p.constant_value()), kt);

  if (auto q = poly_divide_exact(num_p, den_p)) return poly_to_expr(*q, kt);

  Poly g = poly_gcd(num_p, den_p);
  if (!g.is_constant()) {
    auto qn = poly_divide_exact(num_p, g);
    auto qd = poly_divide_exact(den_p, g);
    if (qn && qd) {
      num_p = *qn;
      den_p = *qd;
      mpq_class l2 = rational_content(den_p);
      if (sgn(leading_term(den_p).second) < 0) l2 = -l2;
      num_p = poly_scale(num_p, 1 / l2);
      den_p = poly_scale(den_p, 1 / l2);
      if (den_p.is_constant())
        return poly_to_expr(poly_scale(num_p, 1 / den_p.constant_value()), kt);
    }
  }
  Expr n = poly_to_expr(num_p, kt);
  Expr d = poly_to_expr(den_p, kt);
  return canon(make_product({n, make_power(d, minus_one())}));
}

Expr rational_simplify(const Expr& e) {
  Expr c = canon(e);
  try {
    KernelTable kt;
    Fraction f = to_fraction(c, kt);
    return simplify_quotient(std::move(f.num), std::move(f.den), kt);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::InternalError) throw;
    return c;
  }
}

// ---------------------------------------------------------------------------
// zero decision
// ---------------------------------------------------------------------------

namespace {

enum class KernelClass { Symbolic, Transcendental, Held };

KernelClass classify_kernels(const Poly& p, const KernelTable& kt) {
  KernelClass cls = KernelClass::Symbolic;
  for (int k : kernels_of(p)) {
    const Expr& kern = kt.kernels[static_cast<size_t>(k)];
    if (kern->kind == Kind::Symbol) continue;
    if (contains_kind(kern, Kind::UnknownApp) || contains_kind(kern, Kind::Deriv) ||
        contains_kind(kern, Kind::Integral) || contains_kind(kern, Kind::Wildcard) ||
        contains_kind(kern, Kind::Piecewise))
      return KernelClass::Held;
    cls = KernelClass::Transcendental;
  }
  return cls;
}

std::optional<double> probe_once(const Expr& e, unsigned round) {
  std::map<std::string, double> bind;
  unsigned i = 0;
  for (const auto& name : free_symbols(e)) {
    if (name == "pi") continue;
    // deterministic scattered values in [0.5, 1.6]
    double t = std::fmod(0.6180339887498949 * (i + 1) * (round + 1) + 0.137 * (round + 1), 1.0);
    bind[name] = 0.5 + 1.1 * t;
    ++i;
  }
  try {
    return eval_numeric(e, bind);
  } catch (const Error&) {
    return std::nullopt;
  }
}

ZeroResult probe(const Expr& e) {
  double worst = 0;
  bool any = false;
  for (unsigned round = 0; round < 3; ++round) {
    auto v = probe_once(e, round);
    if (!v) continue;
    any = true;
    worst = std::max(worst, std::abs(*v));
  }
  if (!any) return {ZeroState::Unknown, false, false};
  if (worst < 1e-9) return {ZeroState::Unknown, false, true};
  if (worst > 1e-6) return {ZeroState::NonZero, true, false};
  return {ZeroState::Unknown, false, false};
}

}  // namespace

ZeroResult is_zero(const Expr& e0) {
  Expr e = canon(e0);
  if (is_number(e))
    return {sgn(e->number) == 0 ? ZeroState::Zero : ZeroState::NonZero, false, false};

  KernelTable kt;
  std::optional<Fraction> fr;
  try {
    fr = to_fraction(e, kt);
  } catch (const Error&) {
    fr = std::nullopt;
  }
  if (fr && fr->num.is_zero()) return {ZeroState::Zero, false, false};

  // trig products hide cancellations (sin^2 + cos^2 - 1); linearize and retry
  KernelTable kt2;
  std::optional<Fraction> fr2;
  try {
    Expr lin = linearize_trig(expand(e));
    if (!equal(lin, e)) {
      fr2 = to_fraction(lin, kt2);
      if (fr2->num.is_zero()) return {ZeroState::Zero, false, false};
    }
  } catch (const Error&) {
    fr2 = std::nullopt;
  }

  const Fraction* best = fr2 ? &*fr2 : (fr ? &*fr : nullptr);
  const KernelTable* bkt = fr2 ? &kt2 : &kt;
  if (!best) return probe(e);

  switch (classify_kernels(best->num, *bkt)) {
    case KernelClass::Symbolic: {
      // nonzero polynomial in algebraically independent symbols
      bool generic = !best->num.is_constant();
      return {ZeroState::NonZero, generic, false};
    }
    case KernelClass::Transcendental:
      return probe(e);
    case KernelClass::Held:
      return {ZeroState::Unknown, false, false};
  }
  return {ZeroState::Unknown, false, false};
}

bool definitely_equal(const Expr& a, const Expr& b) {
  return is_zero(a - b).state == ZeroState::Zero;
}

namespace {

// exact square root of a non-negative rational, if it exists
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), 2) == 0)
    return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), 2) == 0)
    return std::nullopt;
  mpq_class out = mpq_class(rn) / mpq_class(rd);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Expr> sqrt_exact(const Expr& e) {
  KernelTable kt;
  Fraction f;
  try {
    f = to_fraction(canon(e), kt);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto mono_sqrt = [&kt](const Poly& p) -> std::optional<Expr> {
    if (p.terms.size() != 1) return std::nullopt;
    const auto& [mono, coeff] = *p.terms.begin();
    auto c = rational_sqrt(coeff);
    if (!c) return std::nullopt;
    Expr acc = num(*c);
    for (const auto& [kid, exp] : mono) {
      if (exp.get_den() != 1 || exp.get_num() % 2 != 0) return std::nullopt;
      acc = acc * make_power(kt.kernels[static_cast<size_t>(kid)],
                             num(mpq_class(exp / 2)));
    }
    return canon(acc);
  };
  auto ns = mono_sqrt(f.num);
  if (!ns) return std::nullopt;
  auto ds = mono_sqrt(f.den);
  if (!ds) return std::nullopt;
  return rational_simplify(*ns / *ds);
}

}  // namespace symapprox
