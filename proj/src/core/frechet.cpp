#include "core/frechet.hpp"

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/numvalid.hpp"
#include "core/ops.hpp"

namespace symapprox {

namespace {

constexpr int kMaxSlotOrder = 4;

struct FdContext {
  const std::string& phi;
  const std::string& h;
};

Expr fd_rec(const Expr& e, const FdContext& ctx);

Expr fd_product(const std::vector<Expr>& kids, const FdContext& ctx) {
  Expr acc = zero();
  for (size_t i = 0; i < kids.size(); ++i) {
    if (!contains_unknown(kids[i], ctx.phi)) continue;
    Expr term = fd_rec(kids[i], ctx);
    for (size_t j = 0; j < kids.size(); ++j)
      if (j != i) term = term * kids[j];
    acc = acc + term;
  }
  return acc;
}

Expr fd_rec(const Expr& e, const FdContext& ctx) {
  if (!contains_unknown(e, ctx.phi)) return zero();
  switch (e->kind) {
    case Kind::Sum: {
      Expr acc = zero();
      for (const auto& t : e->kids) acc = acc + fd_rec(t, ctx);
      return acc;
    }
    case Kind::Product:
      return fd_product(e->kids, ctx);
    case Kind::Power: {
      const Expr& b = e->kids[0];
      const Expr& x = e->kids[1];
      if (!contains_unknown(x, ctx.phi))
        return x * pow(b, canon(x - one())) * fd_rec(b, ctx);
      return pow(b, x) *
             (fd_rec(x, ctx) * log_(b) + x * fd_rec(b, ctx) / b);
    }
    case Kind::FuncApp: {
      Expr da = fd_rec(e->kids[0], ctx);
      switch (e->func) {
        case Func::Exp: return e * da;
        case Func::Sin: return cos_(e->kids[0]) * da;
        case Func::Cos: return -sin_(e->kids[0]) * da;
        case Func::Log: return da / e->kids[0];
      }
      break;
    }
    case Kind::UnknownApp: {
      // it is the unknown itself (other unknowns were filtered above unless
      // the unknown hides in an argument)
      if (e->name != ctx.phi) {
        for (const auto& kid : e->kids)
          if (contains_unknown(kid, ctx.phi))
            throw Error(ErrorCode::NonlocalDependence,
                        "unknown '" + ctx.phi + "' composed inside '" +
                            e->name + "'");
        return zero();
      }
      if (e->kids.size() != 1 || !is_symbol(e->kids[0]))
        throw Error(ErrorCode::NonlocalDependence,
                    "unknown '" + ctx.phi +
                        "' must be applied directly to a plain variable");
      return unknown(ctx.h, {e->kids[0]});
    }
    case Kind::Deriv: {
      if (e->order > kMaxSlotOrder)
        throw Error(ErrorCode::NonlocalDependence,
                    "derivative slots are supported up to order 4");
      // linearity: FD commutes with the derivative
      return diff(fd_rec(e->kids[0], ctx), e->kids[1], e->order);
    }
    case Kind::Integral: {
      if (contains_unknown(e->kids[2], ctx.phi) ||
          contains_unknown(e->kids[3], ctx.phi))
        throw Error(ErrorCode::NonlocalDependence,
                    "integral bounds must not involve the unknown");
      return integral(fd_rec(e->kids[0], ctx), e->kids[1], e->kids[2],
                      e->kids[3]);
    }
    case Kind::Piecewise: {
      std::vector<PiecewisePiece> ps;
      ps.reserve(e->pieces.size());
      for (const auto& p : e->pieces)
        ps.push_back({p.lo, p.hi, canon(fd_rec(p.value, ctx))});
      return make_piecewise(e->kids[0], std::move(ps));
    }
    default:
      break;
  }
  throw Error(ErrorCode::NonlocalDependence,
              "unsupported dependence on the unknown");
}

}  // namespace

Expr frechet_derivative(const Expr& F, const std::string& unknown_name,
                        const std::string& direction) {
  if (unknown_name == direction)
    throw Error(ErrorCode::InvalidArgument,
                "direction must differ from the unknown");
  FdContext ctx{unknown_name, direction};
  return canon(fd_rec(canon(F), ctx));
}

Expr variational_form(const Expr& F, const std::string& unknown_name,
                      const std::string& test) {
  return frechet_derivative(F, unknown_name, test);
}

std::pair<double, double> gateaux_check(
    const Expr& F, const std::string& unknown_name, const std::string& var,
    const Expr& phi_value, const Expr& h_value,
    const std::map<std::string, double>& point, double eps) {
  Expr body = canon(F);
  std::vector<Expr> avoid{body, phi_value, h_value};
  std::string dir = fresh_name("dir", avoid);
  Expr fd = frechet_derivative(body, unknown_name, dir);

  Substitution concretize;
  concretize.set_func(unknown_name, template_of(phi_value, var));
  concretize.set_func(dir, template_of(h_value, var));
  double symbolic = eval_with_quad(substitute(fd, concretize), point);

  std::string epsname = fresh_name("eps", avoid);
  Expr shifted = canon(phi_value + sym(epsname) * h_value);
  Substitution shift;
  shift.set_func(unknown_name, template_of(shifted, var));
  Expr perturbed = substitute(body, shift);
  std::map<std::string, double> plus = point, minus = point;
  plus[epsname] = eps;
  minus[epsname] = -eps;
  double numeric =
      (eval_with_quad(perturbed, plus) - eval_with_quad(perturbed, minus)) /
      (2 * eps);
  return {symbolic, numeric};
}

}  // namespace symapprox
