#include "core/galerkin.hpp"

#include <cmath>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/numvalid.hpp"
#include "core/ops.hpp"
#include "core/polyfrac.hpp"

namespace symapprox {

namespace {

Expr resolve_or_throw(const Expr& e, SolveReport* report, const std::string& what) {
  Expr r = resolve_integrals(e, report);
  if (contains_kind(r, Kind::Integral))
    throw Error(ErrorCode::UnresolvedInnerProduct,
                "inner product did not resolve: " + what);
  return rational_simplify(r);
}

void assemble(const InnerProductSpec& ip, const Basis& basis, Matrix* k,
              Vector* b, Matrix* m, SolveReport* report) {
  const size_t n = basis.functions.size();
  if (k) {
    if (!ip.a_form)
      throw Error(ErrorCode::InvalidArgument, "missing bilinear form");
    k->assign(n, Vector(n));
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i)
        (*k)[j][i] = resolve_or_throw(
            ip.a_form(basis.functions[i], basis.functions[j]), report,
            "a(w" + std::to_string(i + 1) + ", w" + std::to_string(j + 1) + ")");
  }
  if (b) {
    if (!ip.l_form)
      throw Error(ErrorCode::InvalidArgument, "missing load form");
    b->assign(n, zero());
    for (size_t j = 0; j < n; ++j)
      (*b)[j] = resolve_or_throw(ip.l_form(basis.functions[j]), report,
                                 "l(w" + std::to_string(j + 1) + ")");
  }
  if (m) {
    if (!ip.m_form)
      throw Error(ErrorCode::InvalidArgument, "missing mass form");
    m->assign(n, Vector(n));
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i)
        (*m)[j][i] = resolve_or_throw(
            ip.m_form(basis.functions[i], basis.functions[j]), report,
            "m(w" + std::to_string(i + 1) + ", w" + std::to_string(j + 1) + ")");
  }
}

}  // namespace

InnerProductSpec elliptic_weak_form(const Expr& p, const Expr& q, const Expr& f,
                                    const Expr& var, const Expr& lo,
                                    const Expr& hi) {
  InnerProductSpec ip;
  ip.lo = canon(lo);
  ip.hi = canon(hi);
  Expr pp = canon(p), qq = canon(q), ff = canon(f), x = var;
  ip.a_form = [pp, qq, x, ip_lo = ip.lo, ip_hi = ip.hi](const Expr& u,
                                                        const Expr& v) {
    Expr integrand = pp * diff(u, x) * diff(v, x) + qq * u * v;
    return integral(canon(integrand), x, ip_lo, ip_hi);
  };
  ip.l_form = [ff, x, ip_lo = ip.lo, ip_hi = ip.hi](const Expr& v) {
    return integral(canon(ff * v), x, ip_lo, ip_hi);
  };
  ip.m_form = [x, ip_lo = ip.lo, ip_hi = ip.hi](const Expr& u, const Expr& v) {
    return integral(canon(u * v), x, ip_lo, ip_hi);
  };
  return ip;
}

Basis sine_basis(int n, const Expr& var, const Expr& lo, const Expr& hi) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "basis size must be >= 1");
  Basis b{BasisKind::Sine, var, {}};
  Expr xi = canon((var - lo) / (hi - lo));
  for (int i = 1; i <= n; ++i)
    b.functions.push_back(canon(sin_(num(i) * sym("pi") * xi)));
  return b;
}

Basis poly_bubble_basis(int n, const Expr& var, const Expr& lo, const Expr& hi) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "basis size must be >= 1");
  Basis b{BasisKind::PolyBubble, var, {}};
  Expr xi = canon((var - lo) / (hi - lo));
  for (int i = 1; i <= n; ++i)
    b.functions.push_back(canon(pow(xi, num(i)) * (one() - xi)));
  return b;
}

Basis hat_basis(int n, const Expr& var, const Expr& lo, const Expr& hi) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "basis size must be >= 1");
  Expr clo = canon(lo), chi = canon(hi);
  if (!is_number(clo) || !is_number(chi))
    throw Error(ErrorCode::InvalidArgument, "hat basis needs rational endpoints");
  mpq_class a = clo->number, c = chi->number;
  if (!(a < c))
    throw Error(ErrorCode::InvalidArgument, "hat basis needs lo < hi");
  mpq_class h = (c - a) / (n + 1);
  Basis b{BasisKind::Hat, var, {}};
  for (int i = 1; i <= n; ++i) {
    mpq_class left = a + (i - 1) * h, node = a + i * h, right = a + (i + 1) * h;
    std::vector<PiecewisePiece> pieces;
    pieces.push_back(
        {num(left), num(node), canon((var - num(left)) / num(h))});
    pieces.push_back(
        {num(node), num(right), canon((num(right) - var) / num(h))});
    b.functions.push_back(piecewise(var, std::move(pieces)));
  }
  return b;
}

GalerkinSolution galerkin_elliptic(const InnerProductSpec& ip, const Basis& basis) {
  GalerkinSolution sol;
  assemble(ip, basis, &sol.stiffness, &sol.load, nullptr, &sol.report);
  std::vector<Expr> generic;
  sol.coeffs = linear_solve_symbolic(sol.stiffness, sol.load, &generic);
  for (const auto& g : generic) sol.report.note_generic(g);
  Expr acc = zero();
  for (size_t i = 0; i < basis.functions.size(); ++i)
    acc = acc + sol.coeffs[i] * basis.functions[i];
  sol.approximant = rational_simplify(acc);
  return sol;
}

namespace {

// numeric roots of Σ a_k λ^k by scan + bisection; empty when any coefficient
// fails to evaluate (symbolic parameters present)
std::vector<double> char_poly_roots(const std::vector<Expr>& coeffs) {
  std::vector<double> a;
  a.reserve(coeffs.size());
  try {
    for (const auto& c : coeffs) a.push_back(eval_numeric(c, {}));
  } catch (const Error&) {
    return {};
  }
  while (!a.empty() && std::fabs(a.back()) < 1e-14) a.pop_back();
  if (a.size() < 2) return {};
  auto p = [&](double x) {
    double v = 0;
    for (size_t i = a.size(); i-- > 0;) v = v * x + a[i];
    return v;
  };
  double bound = 0;
  for (size_t i = 0; i + 1 < a.size(); ++i)
    bound = std::max(bound, std::fabs(a[i] / a.back()));
  bound += 1;
  std::vector<double> roots;
  const int panels = 4000;
  double prev_x = -bound, prev_v = p(prev_x);
  for (int i = 1; i <= panels; ++i) {
    double x = -bound + 2 * bound * i / panels;
    double v = p(x);
    if (prev_v == 0) {
      roots.push_back(prev_x);
    } else if ((prev_v < 0) != (v < 0)) {
      roots.push_back(bisect_root(p, prev_x, x, 1e-12 * bound));
    }
    prev_x = x;
    prev_v = v;
  }
  if (prev_v == 0) roots.push_back(prev_x);
  return roots;
}

}  // namespace

SpectralSolution galerkin_spectral(const InnerProductSpec& ip, const Basis& basis,
                                   const std::string& lambda_name) {
  SpectralSolution sol;
  sol.lambda_name = lambda_name;
  assemble(ip, basis, &sol.stiffness, nullptr, &sol.mass, &sol.report);
  const size_t n = basis.functions.size();
  Expr lambda = sym(lambda_name);
  Matrix pencil(n, Vector(n));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i)
      pencil[j][i] = canon(sol.stiffness[j][i] - lambda * sol.mass[j][i]);
  std::vector<Expr> generic;
  sol.char_poly = det_symbolic(pencil, &generic);
  for (const auto& g : generic) sol.report.note_generic(g);
  sol.char_poly = rational_simplify(sol.char_poly);
  try {
    auto coeffs = collect_powers(sol.char_poly, lambda_name, static_cast<int>(n));
    sol.eigenvalues = char_poly_roots(coeffs);
  } catch (const Error&) {
    // non-polynomial characteristic function: leave the numeric list empty
  }
  return sol;
}

std::optional<std::vector<Expr>> spectral_exact_eigenvalues(
    const SpectralSolution& s) {
  std::vector<Expr> coeffs;
  try {
    coeffs = collect_powers(s.char_poly, s.lambda_name, 2);
  } catch (const Error&) {
    return std::nullopt;  // degree above 2
  }
  const Expr &c0 = coeffs[0], &c1 = coeffs[1], &c2 = coeffs[2];
  if (is_zero(c2).state == ZeroState::Zero) {
    if (is_zero(c1).state != ZeroState::NonZero) return std::nullopt;
    return std::vector<Expr>{rational_simplify(-c0 / c1)};
  }
  Expr disc = rational_simplify(c1 * c1 - num(4) * c2 * c0);
  if (is_zero(disc).state == ZeroState::Zero)
    return std::vector<Expr>{rational_simplify(-c1 / (num(2) * c2))};
  auto root = sqrt_exact(disc);
  if (!root) return std::nullopt;
  Expr r1 = rational_simplify((-c1 - *root) / (num(2) * c2));
  Expr r2 = rational_simplify((-c1 + *root) / (num(2) * c2));
  return std::vector<Expr>{r1, r2};
}

EvolutionSystem galerkin_evolution(const InnerProductSpec& ip, const Basis& basis,
                                   const Expr& u0) {
  EvolutionSystem sys;
  assemble(ip, basis, &sys.stiffness, nullptr, &sys.mass, &sys.report);
  const size_t n = basis.functions.size();
  Expr start = u0 ? canon(u0) : zero();
  if (is_zero_literal(start)) {
    sys.initial_projection.assign(n, zero());
    return sys;
  }
  Vector rhs(n);
  for (size_t j = 0; j < n; ++j)
    rhs[j] = resolve_or_throw(ip.m_form(start, basis.functions[j]), &sys.report,
                              "<u0, w" + std::to_string(j + 1) + ">");
  std::vector<Expr> generic;
  sys.initial_projection = linear_solve_symbolic(sys.mass, rhs, &generic);
  for (const auto& g : generic) sys.report.note_generic(g);
  return sys;
}

}  // namespace symapprox
