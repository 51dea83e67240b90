#include "core/expr.hpp"

#include <algorithm>
#include <deque>

namespace symapprox {

// ---------------------------------------------------------------------------
// raw constructors
// ---------------------------------------------------------------------------

static std::shared_ptr<ExprNode> blank(Kind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

Expr make_number(mpq_class q) {
  q.canonicalize();
  auto n = blank(Kind::Number);
  n->number = std::move(q);
  return n;
}

Expr make_symbol(std::string name) {
  auto n = blank(Kind::Symbol);
  n->name = std::move(name);
  return n;
}

Expr make_sum(std::vector<Expr> terms) {
  auto n = blank(Kind::Sum);
  n->kids = std::move(terms);
  return n;
}

Expr make_product(std::vector<Expr> factors) {
  auto n = blank(Kind::Product);
  n->kids = std::move(factors);
  return n;
}

Expr make_power(Expr base, Expr exponent) {
  auto n = blank(Kind::Power);
  n->kids = {std::move(base), std::move(exponent)};
  return n;
}

Expr make_func(Func f, Expr arg) {
  auto n = blank(Kind::FuncApp);
  n->func = f;
  n->kids = {std::move(arg)};
  return n;
}

Expr make_unknown(std::string name, std::vector<Expr> args) {
  auto n = blank(Kind::UnknownApp);
  n->name = std::move(name);
  n->kids = std::move(args);
  return n;
}

Expr make_deriv(Expr expr, Expr var, int order) {
  auto n = blank(Kind::Deriv);
  n->kids = {std::move(expr), std::move(var)};
  n->order = order;
  return n;
}

Expr make_integral(Expr integrand, Expr var, Expr lo, Expr hi) {
  auto n = blank(Kind::Integral);
  n->kids = {std::move(integrand), std::move(var), std::move(lo), std::move(hi)};
  return n;
}

Expr make_piecewise(Expr var, std::vector<PiecewisePiece> pieces) {
  auto n = blank(Kind::Piecewise);
  n->kids = {std::move(var)};
  n->pieces = std::move(pieces);
  return n;
}

Expr make_wildcard(std::string name, WildConstraint c) {
  auto n = blank(Kind::Wildcard);
  n->name = std::move(name);
  n->wild = c;
  return n;
}

// ---------------------------------------------------------------------------
// convenience constructors
// ---------------------------------------------------------------------------

Expr num(long n) { return make_number(mpq_class(n)); }

Expr num(long n, long d) {
  mpq_class q(n, d);
  q.canonicalize();
  return make_number(q);
}

Expr num(const mpq_class& q) { return make_number(q); }

Expr sym(const std::string& name) { return make_symbol(name); }

Expr add(std::vector<Expr> terms) { return canon(make_sum(std::move(terms))); }
Expr mul(std::vector<Expr> factors) { return canon(make_product(std::move(factors))); }
Expr pow(Expr base, Expr exponent) {
  return canon(make_power(std::move(base), std::move(exponent)));
}
Expr sin_(Expr a) { return canon(make_func(Func::Sin, std::move(a))); }
Expr cos_(Expr a) { return canon(make_func(Func::Cos, std::move(a))); }
Expr exp_(Expr a) { return canon(make_func(Func::Exp, std::move(a))); }
Expr log_(Expr a) { return canon(make_func(Func::Log, std::move(a))); }
Expr unknown(const std::string& name, std::vector<Expr> args) {
  return canon(make_unknown(name, std::move(args)));
}
Expr deriv(Expr expr, Expr var, int order) {
  return canon(make_deriv(std::move(expr), std::move(var), order));
}
Expr integral(Expr integrand, Expr var, Expr lo, Expr hi) {
  return canon(make_integral(std::move(integrand), std::move(var), std::move(lo),
                             std::move(hi)));
}
Expr piecewise(Expr var, std::vector<PiecewisePiece> pieces) {
  return canon(make_piecewise(std::move(var), std::move(pieces)));
}

Expr zero() {
  static const Expr z = [] {
    auto e = make_number(mpq_class(0));
    e->canonical.store(true);
    return e;
  }();
  return z;
}

Expr one() {
  static const Expr o = [] {
    auto e = make_number(mpq_class(1));
    e->canonical.store(true);
    return e;
  }();
  return o;
}

Expr minus_one() {
  static const Expr m = [] {
    auto e = make_number(mpq_class(-1));
    e->canonical.store(true);
    return e;
  }();
  return m;
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({minus_one(), b})}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, minus_one())}); }
Expr operator-(const Expr& a) { return mul({minus_one(), a}); }
Expr operator+(const Expr& a, long b) { return a + num(b); }
Expr operator+(long a, const Expr& b) { return num(a) + b; }
Expr operator-(const Expr& a, long b) { return a - num(b); }
Expr operator-(long a, const Expr& b) { return num(a) - b; }
Expr operator*(const Expr& a, long b) { return a * num(b); }
Expr operator*(long a, const Expr& b) { return num(a) * b; }
Expr operator/(const Expr& a, long b) { return a / num(b); }
Expr operator/(long a, const Expr& b) { return num(a) / b; }

// ---------------------------------------------------------------------------
// ordering
// ---------------------------------------------------------------------------

static int sgn_int(int v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

static int compare_lex(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  switch (a->kind) {
    case Kind::Number:
      return sgn_int(cmp(a->number, b->number));
    case Kind::Symbol:
      return sgn_int(a->name.compare(b->name));
    case Kind::Wildcard: {
      int c = sgn_int(a->name.compare(b->name));
      if (c != 0) return c;
      return sgn_int(static_cast<int>(a->wild) - static_cast<int>(b->wild));
    }
    case Kind::Power:
    case Kind::Sum:
    case Kind::Product:
    case Kind::Integral:
      return compare_lex(a->kids, b->kids);
    case Kind::FuncApp: {
      if (a->func != b->func)
        return static_cast<int>(a->func) < static_cast<int>(b->func) ? -1 : 1;
      return compare(a->kids[0], b->kids[0]);
    }
    case Kind::UnknownApp: {
      int c = sgn_int(a->name.compare(b->name));
      if (c != 0) return c;
      return compare_lex(a->kids, b->kids);
    }
    case Kind::Deriv: {
      int c = compare_lex(a->kids, b->kids);
      if (c != 0) return c;
      return sgn_int(a->order - b->order);
    }
    case Kind::Piecewise: {
      int c = compare(a->kids[0], b->kids[0]);
      if (c != 0) return c;
      if (a->pieces.size() != b->pieces.size())
        return a->pieces.size() < b->pieces.size() ? -1 : 1;
      for (size_t i = 0; i < a->pieces.size(); ++i) {
        c = compare(a->pieces[i].lo, b->pieces[i].lo);
        if (c != 0) return c;
        c = compare(a->pieces[i].hi, b->pieces[i].hi);
        if (c != 0) return c;
        c = compare(a->pieces[i].value, b->pieces[i].value);
        if (c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// small queries
// ---------------------------------------------------------------------------

bool is_number(const Expr& e) { return e->kind == Kind::Number; }

bool is_integer_number(const Expr& e) {
  return e->kind == Kind::Number && e->number.get_den() == 1;
}

std::optional<long> as_small_int(const Expr& e) {
  if (!is_integer_number(e)) return std::nullopt;
  const mpz_class& n = e->number.get_num();
  if (!n.fits_slong_p()) return std::nullopt;
  return n.get_si();
}

bool is_zero_literal(const Expr& e) {
  return e->kind == Kind::Number && sgn(e->number) == 0;
}

bool is_one_literal(const Expr& e) {
  return e->kind == Kind::Number && e->number == 1;
}

bool is_symbol(const Expr& e) { return e->kind == Kind::Symbol; }

bool is_symbol(const Expr& e, const std::string& name) {
  return e->kind == Kind::Symbol && e->name == name;
}

bool free_of(const Expr& e, const Expr& symbol) {
  return free_of(e, symbol->name);
}

bool free_of(const Expr& e, const std::string& symbol) {
  switch (e->kind) {
    case Kind::Symbol:
      return e->name != symbol;
    case Kind::Number:
    case Kind::Wildcard:
      return true;
    case Kind::Integral: {
      // integration variable binds occurrences in the integrand
      if (is_symbol(e->kids[1], symbol))
        return free_of(e->kids[2], symbol) && free_of(e->kids[3], symbol);
      break;
    }
    default:
      break;
  }
  for (const auto& k : e->kids)
    if (!free_of(k, symbol)) return false;
  for (const auto& p : e->pieces)
    if (!free_of(p.lo, symbol) || !free_of(p.hi, symbol) || !free_of(p.value, symbol))
      return false;
  return true;
}

bool contains_kind(const Expr& e, Kind k) {
  if (e->kind == k) return true;
  for (const auto& kid : e->kids)
    if (contains_kind(kid, k)) return true;
  for (const auto& p : e->pieces)
    if (contains_kind(p.lo, k) || contains_kind(p.hi, k) || contains_kind(p.value, k))
      return true;
  return false;
}

bool contains_unknown(const Expr& e, const std::string& name) {
  if (e->kind == Kind::UnknownApp && e->name == name) return true;
  for (const auto& kid : e->kids)
    if (contains_unknown(kid, name)) return true;
  for (const auto& p : e->pieces)
    if (contains_unknown(p.lo, name) || contains_unknown(p.hi, name) ||
        contains_unknown(p.value, name))
      return true;
  return false;
}

static void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e->kind == Kind::Symbol) out.insert(e->name);
  for (const auto& k : e->kids) collect_symbols(k, out);
  for (const auto& p : e->pieces) {
    collect_symbols(p.lo, out);
    collect_symbols(p.hi, out);
    collect_symbols(p.value, out);
  }
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
  }
  return "?";
}

std::optional<Func> func_by_name(const std::string& s) {
  if (s == "sin") return Func::Sin;
  if (s == "cos") return Func::Cos;
  if (s == "exp") return Func::Exp;
  if (s == "log") return Func::Log;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// canonicalization
// ---------------------------------------------------------------------------

namespace {

mpq_class mpq_pow_int(const mpq_class& q, long n) {
  if (n == 0) return mpq_class(1);
  bool invert = n < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-(n + 1)) + 1ul
                           : static_cast<unsigned long>(n);
  mpz_class nn, dd;
  mpz_pow_ui(nn.get_mpz_t(), q.get_num().get_mpz_t(), e);
  mpz_pow_ui(dd.get_mpz_t(), q.get_den().get_mpz_t(), e);
  mpq_class r;
  if (invert) {
    r = mpq_class(dd) / mpq_class(nn);
  } else {
    r = mpq_class(nn) / mpq_class(dd);
  }
  r.canonicalize();
  return r;
}

// exact r-th root of a non-negative rational, if it exists
std::optional<mpq_class> mpq_exact_root(const mpq_class& q, unsigned long r) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), r) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), r) == 0) return std::nullopt;
  mpq_class out = mpq_class(rn) / mpq_class(rd);
  out.canonicalize();
  return out;
}

Expr mark(Expr e) {
  e->canonical.store(true, std::memory_order_release);
  return e;
}

Expr number_c(mpq_class q) { return mark(make_number(std::move(q))); }

// split a canonical non-Number term into (rational coefficient, unit part)
std::pair<mpq_class, Expr> split_coeff(const Expr& t) {
  if (t->kind == Kind::Product && !t->kids.empty() && is_number(t->kids[0])) {
    mpq_class c = t->kids[0]->number;
    if (t->kids.size() == 2) return {c, t->kids[1]};
    std::vector<Expr> rest(t->kids.begin() + 1, t->kids.end());
    return {c, mark(make_product(std::move(rest)))};
  }
  return {mpq_class(1), t};
}

// rebuild coefficient * unit-part as a canonical term
Expr term_with_coeff(const mpq_class& c, const Expr& key) {
  if (c == 1) return key;
  std::vector<Expr> fs;
  fs.push_back(number_c(c));
  if (key->kind == Kind::Product) {
    fs.insert(fs.end(), key->kids.begin(), key->kids.end());
  } else {
    fs.push_back(key);
  }
  return mark(make_product(std::move(fs)));
}

// (negated?, |e|) for leading-sign extraction on canonical expressions
std::pair<bool, Expr> split_sign(const Expr& e) {
  if (is_number(e) && sgn(e->number) < 0) return {true, number_c(-e->number)};
  if (e->kind == Kind::Product && !e->kids.empty() && is_number(e->kids[0]) &&
      sgn(e->kids[0]->number) < 0) {
    auto [c, key] = split_coeff(e);
    return {true, term_with_coeff(-c, key)};
  }
  return {false, e};
}

// if e is r*pi for rational r, return r
std::optional<mpq_class> pi_multiple(const Expr& e) {
  if (is_symbol(e, "pi")) return mpq_class(1);
  if (e->kind == Kind::Product && e->kids.size() == 2 && is_number(e->kids[0]) &&
      is_symbol(e->kids[1], "pi"))
    return e->kids[0]->number;
  return std::nullopt;
}

Expr canon_sum(std::vector<Expr> terms);
Expr canon_product(std::vector<Expr> factors, int depth = 0);
Expr canon_power(const Expr& base, const Expr& exponent, int depth = 0);
Expr canon_func(Func f, const Expr& arg);

Expr canon_sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  for (auto& t : terms) {
    if (t->kind == Kind::Sum)
      flat.insert(flat.end(), t->kids.begin(), t->kids.end());
    else
      flat.push_back(t);
  }
  mpq_class numeric(0);
  std::map<Expr, mpq_class, ExprLess> coeffs;
  for (auto& t : flat) {
    if (is_number(t)) {
      numeric += t->number;
    } else {
      auto [c, key] = split_coeff(t);
      coeffs[key] += c;
    }
  }
  std::vector<Expr> out;
  if (sgn(numeric) != 0) out.push_back(number_c(numeric));
  for (auto& [key, c] : coeffs) {
    if (sgn(c) == 0) continue;
    out.push_back(term_with_coeff(c, key));
  }
  if (out.empty()) return zero();
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), ExprLess{});
  return mark(make_sum(std::move(out)));
}

Expr canon_power(const Expr& base, const Expr& exponent, int depth) {
  if (depth > 64) throw Error(ErrorCode::InternalError, "power nesting too deep");
  // x^0 -> 1 (including 0^0), x^1 -> x, 1^x -> 1
  if (is_zero_literal(exponent)) return one();
  if (is_one_literal(exponent)) return base;
  if (is_one_literal(base)) return one();
  if (is_zero_literal(base)) {
    if (is_number(exponent) && sgn(exponent->number) > 0) return zero();
    return mark(make_power(base, exponent));  // 0^negative etc. held
  }
  // exp(u)^r -> exp(r*u) for any exponent
  if (base->kind == Kind::FuncApp && base->func == Func::Exp) {
    Expr arg = canon(make_product({base->kids[0], exponent}));
    return canon_func(Func::Exp, arg);
  }
  if (is_number(exponent)) {
    const mpq_class& x = exponent->number;
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) {
      long n = x.get_num().get_si();
      // exact numeric power
      if (is_number(base)) return number_c(mpq_pow_int(base->number, n));
      // (a^m)^n -> a^(m*n) for integer n
      if (base->kind == Kind::Power) {
        Expr ex = canon(make_product({base->kids[1], exponent}));
        Expr b2 = base->kids[0];
        if (is_number(ex)) return canon_power(b2, ex, depth + 1);
        if (is_one_literal(ex)) return b2;
        return canon_power(b2, ex, depth + 1);
      }
      // (a*b)^n -> a^n * b^n for integer n
      if (base->kind == Kind::Product) {
        std::vector<Expr> fs;
        fs.reserve(base->kids.size());
        for (const auto& f : base->kids) fs.push_back(canon_power(f, exponent, depth + 1));
        return canon_product(std::move(fs), depth + 1);
      }
    } else if (is_number(base) && x.get_den().fits_ulong_p() &&
               x.get_num().fits_slong_p()) {
      // exact perfect roots: 4^(1/2) -> 2, (9/4)^(3/2) -> 27/8
      unsigned long den = x.get_den().get_ui();
      long p = x.get_num().get_si();
      if (sgn(base->number) > 0) {
        if (auto root = mpq_exact_root(base->number, den))
          return number_c(mpq_pow_int(*root, p));
      }
    }
  }
  return mark(make_power(base, exponent));
}

Expr canon_product(std::vector<Expr> factors, int depth) {
  if (depth > 64) throw Error(ErrorCode::InternalError, "product nesting too deep");
  mpq_class coeff(1);
  std::map<Expr, std::vector<Expr>, ExprLess> expo;  // base -> exponent terms
  std::vector<Expr> exp_args;                        // accumulated exp() arguments
  std::deque<Expr> work(factors.begin(), factors.end());
  while (!work.empty()) {
    Expr f = work.front();
    work.pop_front();
    switch (f->kind) {
      case Kind::Number:
        coeff *= f->number;
        break;
      case Kind::Product:
        for (const auto& k : f->kids) work.push_back(k);
        break;
      case Kind::Power:
        expo[f->kids[0]].push_back(f->kids[1]);
        break;
      case Kind::FuncApp:
        if (f->func == Func::Exp) {
          exp_args.push_back(f->kids[0]);
          break;
        }
        [[fallthrough]];
      default:
        expo[f].push_back(one());
        break;
    }
  }
  if (sgn(coeff) == 0) return zero();

  std::vector<Expr> out;
  bool reprocess = false;
  if (!exp_args.empty()) {
    Expr arg = canon(make_sum(std::move(exp_args)));
    if (!is_zero_literal(arg)) out.push_back(mark(make_func(Func::Exp, arg)));
  }
  for (auto& [base, exps] : expo) {
    Expr ex = exps.size() == 1 ? exps[0] : canon(make_sum(std::move(exps)));
    Expr f = canon_power(base, ex, depth + 1);
    if (is_number(f)) {
      coeff *= f->number;
    } else if (f->kind == Kind::Product || (f->kind == Kind::FuncApp && f->func == Func::Exp)) {
      // merged exponents un-nested the factor; fold everything once more
      out.push_back(f);
      reprocess = true;
    } else {
      out.push_back(f);
    }
  }
  if (sgn(coeff) == 0) return zero();
  if (reprocess) {
    out.push_back(number_c(coeff));
    return canon_product(std::move(out), depth + 1);
  }
  if (out.empty()) return number_c(coeff);
  std::sort(out.begin(), out.end(), ExprLess{});
  if (coeff == 1) {
    if (out.size() == 1) return out[0];
    return mark(make_product(std::move(out)));
  }
  std::vector<Expr> all;
  all.reserve(out.size() + 1);
  all.push_back(number_c(coeff));
  all.insert(all.end(), out.begin(), out.end());
  return mark(make_product(std::move(all)));
}

// Exact value of sin(m*pi/12) for the angles whose sine is 0, +-1/2, +-1,
// +-sqrt(2)/2, or +-sqrt(3)/2; nullopt for the remaining twelfths (15 degree
// angles), which stay as held function applications.
std::optional<Expr> sin_twelfths(long m) {
  auto surd_half = [](long radicand, int sign) {
    Expr root = canon_power(number_c(mpq_class(radicand)), number_c(mpq_class(1, 2)));
    return canon_product({number_c(mpq_class(sign, 2)), root});
  };
  switch (m) {
    case 0:
    case 12:
      return zero();
    case 6:
      return one();
    case 18:
      return minus_one();
    case 2:
    case 10:
      return number_c(mpq_class(1, 2));
    case 14:
    case 22:
      return number_c(mpq_class(-1, 2));
    case 3:
    case 9:
      return surd_half(2, 1);
    case 15:
    case 21:
      return surd_half(2, -1);
    case 4:
    case 8:
      return surd_half(3, 1);
    case 16:
    case 20:
      return surd_half(3, -1);
    default:
      return std::nullopt;
  }
}

Expr canon_func(Func f, const Expr& arg) {
  switch (f) {
    case Func::Exp:
      if (is_zero_literal(arg)) return one();
      if (arg->kind == Kind::FuncApp && arg->func == Func::Log) return arg->kids[0];
      break;
    case Func::Log:
      if (is_one_literal(arg)) return zero();
      if (arg->kind == Kind::FuncApp && arg->func == Func::Exp) return arg->kids[0];
      break;
    case Func::Sin:
    case Func::Cos: {
      auto [negated, a] = split_sign(arg);
      if (is_zero_literal(a)) return f == Func::Sin ? zero() : one();
      if (auto r = pi_multiple(a)) {
        if (r->get_den() == 1) {
          // sin(n*pi) = 0, cos(n*pi) = +-1
          if (f == Func::Sin) return zero();
          bool even = mpz_even_p(r->get_num().get_mpz_t());
          return even ? one() : minus_one();
        }
        if (r->get_den() == 2) {
          // sin(m*pi/2) = +-1 (m odd), cos(m*pi/2) = 0
          if (f == Func::Cos) return zero();
          mpz_class m4;
          mpz_fdiv_r_ui(m4.get_mpz_t(), r->get_num().get_mpz_t(), 4);
          Expr v = (m4 == 1) ? one() : minus_one();
          if (negated) v = (m4 == 1) ? minus_one() : one();
          return v;
        }
        long den = r->get_den().fits_slong_p() ? r->get_den().get_si() : 0;
        if (den == 3 || den == 4 || den == 6) {
          // Exact values at the classical angles: map k*pi/den onto the
          // sin(m*pi/12) table, using cos(t) = sin(t + pi/2).
          mpz_class scaled = r->get_num() * (12 / den);
          mpz_class mm;
          mpz_fdiv_r_ui(mm.get_mpz_t(), scaled.get_mpz_t(), 24);
          long m = mm.get_si();
          if (f == Func::Cos) m = (m + 6) % 24;
          if (auto v = sin_twelfths(m)) {
            if (negated && f == Func::Sin) return canon_product({minus_one(), *v});
            return *v;
          }
        }
      }
      Expr node = mark(make_func(f, a));
      if (negated && f == Func::Sin)
        return mark(make_product({minus_one(), node}));
      return node;
    }
  }
  return mark(make_func(f, arg));
}

}  // namespace

Expr canon(const Expr& e) {
  if (!e) throw Error(ErrorCode::InternalError, "null expression");
  if (e->canonical.load(std::memory_order_acquire)) return e;
  switch (e->kind) {
    case Kind::Number:
    case Kind::Symbol:
    case Kind::Wildcard:
      return mark(e);
    case Kind::Sum: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(canon(k));
      return canon_sum(std::move(kids));
    }
    case Kind::Product: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(canon(k));
      return canon_product(std::move(kids));
    }
    case Kind::Power:
      return canon_power(canon(e->kids[0]), canon(e->kids[1]));
    case Kind::FuncApp:
      return canon_func(e->func, canon(e->kids[0]));
    case Kind::UnknownApp: {
      std::vector<Expr> args;
      args.reserve(e->kids.size());
      for (const auto& k : e->kids) args.push_back(canon(k));
      return mark(make_unknown(e->name, std::move(args)));
    }
    case Kind::Deriv: {
      Expr inner = canon(e->kids[0]);
      Expr var = canon(e->kids[1]);
      if (e->order == 0) return inner;
      if (is_symbol(var) && free_of(inner, var->name)) return zero();
      if (inner->kind == Kind::Deriv && equal(inner->kids[1], var))
        return mark(make_deriv(inner->kids[0], var, inner->order + e->order));
      return mark(make_deriv(inner, var, e->order));
    }
    case Kind::Integral: {
      Expr f = canon(e->kids[0]);
      Expr var = canon(e->kids[1]);
      Expr lo = canon(e->kids[2]);
      Expr hi = canon(e->kids[3]);
      if (equal(lo, hi)) return zero();
      if (is_zero_literal(f)) return zero();
      return mark(make_integral(f, var, lo, hi));
    }
    case Kind::Piecewise: {
      Expr var = canon(e->kids[0]);
      std::vector<PiecewisePiece> ps;
      for (const auto& p : e->pieces) {
        PiecewisePiece c{canon(p.lo), canon(p.hi), canon(p.value)};
        if (is_zero_literal(c.value)) continue;
        if (is_number(c.lo) && is_number(c.hi) && c.lo->number >= c.hi->number) continue;
        ps.push_back(std::move(c));
      }
      if (ps.empty()) return zero();
      std::sort(ps.begin(), ps.end(), [](const PiecewisePiece& a, const PiecewisePiece& b) {
        int c = compare(a.lo, b.lo);
        if (c != 0) return c < 0;
        c = compare(a.hi, b.hi);
        if (c != 0) return c < 0;
        return compare(a.value, b.value) < 0;
      });
      return mark(make_piecewise(var, std::move(ps)));
    }
  }
  throw Error(ErrorCode::InternalError, "unreachable expression kind");
}

}  // namespace symapprox
