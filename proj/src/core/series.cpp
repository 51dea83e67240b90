#include "core/series.hpp"

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/ops.hpp"
#include "core/polyfrac.hpp"

namespace symapprox {

namespace {

Series make(const Expr& param, int order) {
  Series s;
  s.param = param;
  s.order = order;
  s.coeffs.assign(order + 1, zero());
  return s;
}

int common_order(const Series& a, const Series& b) {
  if (!equal(a.param, b.param))
    throw Error(ErrorCode::InvalidArgument,
                "series arithmetic needs a common parameter");
  return std::min(a.order, b.order);
}

// constant term must be invertible for 1/s, log(s), s^(p/q)
void require_nonzero_center(const Expr& c0, const char* what) {
  ZeroResult z = is_zero(c0);
  if (z.state == ZeroState::Zero)
    throw Error(ErrorCode::PoleAtCenter,
                std::string(what) + ": constant term vanishes at the center");
  if (z.state == ZeroState::Unknown)
    throw Error(ErrorCode::PoleAtCenter,
                std::string(what) +
                    ": constant term is probably zero at the center (numeric probe)");
}

// Σ_{k>=1} coeffs[k] param^k — the zero-constant-term tail of a
Series tail_of(const Series& a) {
  Series t = a;
  t.coeffs[0] = zero();
  return t;
}

// composition f(c0 + T) for analytic f given the Maclaurin coefficients of
// f around c0 (outer[k] = f^(k)(c0)/k!) and the zero-constant-term tail T
Series compose_shifted(const std::vector<Expr>& outer, const Series& tail) {
  Series acc = series_const(tail.param, outer[0], tail.order);
  Series tpow = series_const(tail.param, one(), tail.order);
  for (size_t k = 1; k < outer.size(); ++k) {
    tpow = series_mul(tpow, tail);
    acc = series_add(acc, series_scale(tpow, outer[k]));
  }
  return acc;
}

mpq_class factorial(int n) {
  mpz_class f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return mpq_class(f);
}

}  // namespace

Series series_const(const Expr& param, const Expr& value, int order) {
  Series s = make(param, order);
  s.coeffs[0] = canon(value);
  return s;
}

Expr series_to_expr(const Series& s) {
  Expr acc = zero();
  for (int k = 0; k <= s.order; ++k)
    acc = acc + s.coeffs[k] * pow(s.param, num(k));
  return canon(acc);
}

Series series_add(const Series& a, const Series& b) {
  Series s = make(a.param, common_order(a, b));
  for (int k = 0; k <= s.order; ++k) s.coeffs[k] = canon(a.coeffs[k] + b.coeffs[k]);
  return s;
}

Series series_sub(const Series& a, const Series& b) {
  Series s = make(a.param, common_order(a, b));
  for (int k = 0; k <= s.order; ++k) s.coeffs[k] = canon(a.coeffs[k] - b.coeffs[k]);
  return s;
}

Series series_neg(const Series& a) {
  Series s = a;
  for (auto& c : s.coeffs) c = canon(-c);
  return s;
}

Series series_scale(const Series& a, const Expr& c) {
  Series s = a;
  for (auto& x : s.coeffs) x = canon(c * x);
  return s;
}

Series series_mul(const Series& a, const Series& b) {
  Series s = make(a.param, common_order(a, b));
  for (int k = 0; k <= s.order; ++k) {
    Expr acc = zero();
    for (int i = 0; i <= k; ++i) acc = acc + a.coeff(i) * b.coeff(k - i);
    s.coeffs[k] = rational_simplify(acc);
  }
  return s;
}

Series series_invert(const Series& a) {
  require_nonzero_center(a.coeffs[0], "series reciprocal");
  Series s = make(a.param, a.order);
  // b0 = 1/a0, then b_k = -(Σ_{i=1..k} a_i b_{k-i}) / a0
  s.coeffs[0] = rational_simplify(one() / a.coeffs[0]);
  for (int k = 1; k <= s.order; ++k) {
    Expr acc = zero();
    for (int i = 1; i <= k; ++i) acc = acc + a.coeff(i) * s.coeffs[k - i];
    s.coeffs[k] = rational_simplify(-acc / a.coeffs[0]);
  }
  return s;
}

Series series_div(const Series& a, const Series& b) {
  return series_mul(a, series_invert(b));
}

Series series_pow_int(const Series& a, long n) {
  if (n < 0) return series_pow_int(series_invert(a), -n);
  Series acc = series_const(a.param, one(), a.order);
  Series base = a;
  unsigned long e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1) acc = series_mul(acc, base);
    if (e >>= 1) base = series_mul(base, base);
  }
  return acc;
}

Series series_pow_rational(const Series& a, const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return series_pow_int(a, q.get_num().get_si());
  require_nonzero_center(a.coeffs[0], "fractional power of series");
  // a^q = c0^q Σ binom(q,k) (T/c0)^k
  const Expr c0 = a.coeffs[0];
  Series u = series_scale(tail_of(a), rational_simplify(one() / c0));
  std::vector<Expr> outer(a.order + 1);
  mpq_class binom(1);
  for (int k = 0; k <= a.order; ++k) {
    outer[k] = num(binom);
    binom *= q - k;
    binom /= k + 1;
  }
  return series_scale(compose_shifted(outer, u), canon(pow(c0, num(q))));
}

Series series_exp(const Series& a) {
  const Expr c0 = a.coeffs[0];
  std::vector<Expr> outer(a.order + 1);
  Expr e0 = canon(exp_(c0));
  for (int k = 0; k <= a.order; ++k)
    outer[k] = canon(e0 / num(factorial(k)));
  return compose_shifted(outer, tail_of(a));
}

Series series_sin(const Series& a) {
  const Expr c0 = a.coeffs[0];
  Expr s0 = canon(sin_(c0)), cc0 = canon(cos_(c0));
  // d^k/dx^k sin cycles through sin, cos, -sin, -cos
  std::vector<Expr> outer(a.order + 1);
  for (int k = 0; k <= a.order; ++k) {
    Expr d;
    switch (k % 4) {
      case 0: d = s0; break;
      case 1: d = cc0; break;
      case 2: d = -s0; break;
      default: d = -cc0; break;
    }
    outer[k] = canon(d / num(factorial(k)));
  }
  return compose_shifted(outer, tail_of(a));
}

Series series_cos(const Series& a) {
  const Expr c0 = a.coeffs[0];
  Expr s0 = canon(sin_(c0)), cc0 = canon(cos_(c0));
  std::vector<Expr> outer(a.order + 1);
  for (int k = 0; k <= a.order; ++k) {
    Expr d;
    switch (k % 4) {
      case 0: d = cc0; break;
      case 1: d = -s0; break;
      case 2: d = -cc0; break;
      default: d = s0; break;
    }
    outer[k] = canon(d / num(factorial(k)));
  }
  return compose_shifted(outer, tail_of(a));
}

Series series_log(const Series& a) {
  require_nonzero_center(a.coeffs[0], "log of series");
  const Expr c0 = a.coeffs[0];
  // log(c0 + T) = log(c0) + Σ_{k>=1} (-1)^{k+1} (T/c0)^k / k
  Series u = series_scale(tail_of(a), rational_simplify(one() / c0));
  std::vector<Expr> outer(a.order + 1);
  outer[0] = canon(log_(c0));
  for (int k = 1; k <= a.order; ++k) {
    mpq_class c(k % 2 == 1 ? 1 : -1, k);
    outer[k] = num(c);
  }
  return compose_shifted(outer, u);
}

namespace {

Series taylor_rec(const Expr& e, const Expr& s, int order) {
  if (free_of(e, s)) return series_const(s, e, order);
  switch (e->kind) {
    case Kind::Symbol: {
      // e == s here (otherwise free_of would have caught it)
      Series r = make(s, order);
      if (order >= 1)
        r.coeffs[1] = one();
      else
        r.coeffs[0] = zero();  // truncated below the linear term
      return r;
    }
    case Kind::Sum: {
      Series acc = make(s, order);
      for (const auto& t : e->kids) acc = series_add(acc, taylor_rec(t, s, order));
      return acc;
    }
    case Kind::Product: {
      Series acc = series_const(s, one(), order);
      for (const auto& f : e->kids) acc = series_mul(acc, taylor_rec(f, s, order));
      return acc;
    }
    case Kind::Power: {
      const Expr& base = e->kids[0];
      const Expr& expo = e->kids[1];
      if (is_number(expo)) {
        Series b = taylor_rec(base, s, order);
        return series_pow_rational(b, expo->number);
      }
      if (free_of(expo, s)) {
        // symbolic constant exponent: binomial series with symbolic q
        Series b = taylor_rec(base, s, order);
        require_nonzero_center(b.coeffs[0], "symbolic power of series");
        const Expr c0 = b.coeffs[0];
        Series u = series_scale(tail_of(b), rational_simplify(one() / c0));
        std::vector<Expr> outer(order + 1);
        Expr binom = one();
        for (int k = 0; k <= order; ++k) {
          outer[k] = rational_simplify(binom);
          binom = binom * (expo - num(k)) / num(k + 1);
        }
        return series_scale(compose_shifted(outer, u),
                            canon(pow(c0, expo)));
      }
      // base^g(s) = exp(g·log(base)): only when the base is free of s
      if (free_of(base, s)) {
        Series g = taylor_rec(expo, s, order);
        return series_exp(series_scale(g, canon(log_(base))));
      }
      throw Error(ErrorCode::DomainError,
                  "cannot expand power with parameter in both base and exponent");
    }
    case Kind::FuncApp: {
      Series a = taylor_rec(e->kids[0], s, order);
      switch (e->func) {
        case Func::Exp: return series_exp(a);
        case Func::Sin: return series_sin(a);
        case Func::Cos: return series_cos(a);
        case Func::Log: return series_log(a);
      }
      break;
    }
    default:
      break;
  }
  throw Error(ErrorCode::DomainError,
              "expression class not supported by series expansion");
}

}  // namespace

Series taylor(const Expr& e, const Expr& s, const Expr& center, int order) {
  if (!is_symbol(s))
    throw Error(ErrorCode::InvalidArgument, "expansion parameter must be a symbol");
  if (order < 0)
    throw Error(ErrorCode::InvalidArgument, "series order must be >= 0");
  Expr body = canon(e);
  Expr param = s;
  if (!is_zero_literal(center)) {
    // shift: expand e(center + h) around h = 0, report in the original symbol
    std::string h = fresh_name(s->name, {body, center});
    Substitution sub;
    sub.set(s, canon(center + sym(h)));
    body = substitute(body, sub);
    param = sym(h);
  }
  Series r = taylor_rec(body, param, order);
  r.param = s;
  for (auto& c : r.coeffs) c = rational_simplify(c);
  return r;
}

Expr PadeApproximant::as_expr() const {
  return rational_simplify(num / den);
}

PadeApproximant pade(const Series& s, int m, int n, std::vector<Expr>* genericity) {
  if (m < 0 || n < 0 || m + n > s.order)
    throw Error(ErrorCode::InvalidArgument,
                "pade orders must satisfy 0 <= m, 0 <= n, m + n <= series order");
  // denominator: q_0 = 1 and Σ_{j=0..n} q_j c_{m+k-j} = 0 for k = 1..n
  std::vector<Expr> q(n + 1, zero());
  q[0] = one();
  if (n > 0) {
    Matrix a(n, Vector(n));
    Vector b(n);
    auto c = [&](int i) { return i >= 0 ? s.coeff(i) : zero(); };
    for (int k = 1; k <= n; ++k) {
      for (int j = 1; j <= n; ++j) a[k - 1][j - 1] = c(m + k - j);
      b[k - 1] = canon(-c(m + k));
    }
    try {
      Vector sol = linear_solve_symbolic(a, b, genericity);
      for (int j = 1; j <= n; ++j) q[j] = sol[j - 1];
    } catch (const Error& err) {
      if (err.code() == ErrorCode::SingularSystem)
        throw Error(ErrorCode::SingularPade,
                    "degenerate denominator system for orders (" +
                        std::to_string(m) + "," + std::to_string(n) +
                        "); try (" + std::to_string(m > 0 ? m - 1 : m + 1) + "," +
                        std::to_string(n) + ") or (" + std::to_string(m + 1) +
                        "," + std::to_string(n) + ")");
      throw;
    }
  }
  // numerator by convolution: p_i = Σ_{j=0..min(i,n)} q_j c_{i-j}
  PadeApproximant pa;
  pa.param = s.param;
  Expr numr = zero(), den = zero();
  for (int i = 0; i <= m; ++i) {
    Expr p = zero();
    for (int j = 0; j <= std::min(i, n); ++j)
      p = p + q[j] * s.coeff(i - j);
    numr = numr + rational_simplify(p) * pow(s.param, num(i));
  }
  for (int j = 0; j <= n; ++j) den = den + q[j] * pow(s.param, num(j));
  pa.num = canon(numr);
  pa.den = canon(den);
  return pa;
}

}  // namespace symapprox
