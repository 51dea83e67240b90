#include "core/numvalid.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/ops.hpp"

namespace symapprox {

namespace {

// evaluation that resolves Integral nodes by adaptive Simpson
double ev(const Expr& e, const std::map<std::string, double>& b, double tol);

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  double m = (a + b) / 2;
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * tol)
    return left + right + delta / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double ev(const Expr& e, const std::map<std::string, double>& b, double tol) {
  if (!contains_kind(e, Kind::Integral)) return eval_numeric(e, b);
  switch (e->kind) {
    case Kind::Sum: {
      double acc = 0;
      for (const auto& t : e->kids) acc += ev(t, b, tol);
      return acc;
    }
    case Kind::Product: {
      double acc = 1;
      for (const auto& f : e->kids) acc *= ev(f, b, tol);
      return acc;
    }
    case Kind::Power: {
      double base = ev(e->kids[0], b, tol);
      double x = ev(e->kids[1], b, tol);
      if (base == 0.0 && x < 0)
        throw Error(ErrorCode::DomainError, "zero raised to a negative power");
      if (base < 0 && x != std::floor(x))
        throw Error(ErrorCode::DomainError,
                    "negative base with non-integer exponent");
      return std::pow(base, x);
    }
    case Kind::FuncApp: {
      double a = ev(e->kids[0], b, tol);
      switch (e->func) {
        case Func::Exp: return std::exp(a);
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Log:
          if (a <= 0)
            throw Error(ErrorCode::DomainError, "log of a non-positive value");
          return std::log(a);
      }
      break;
    }
    case Kind::Integral: {
      double lo = ev(e->kids[2], b, tol);
      double hi = ev(e->kids[3], b, tol);
      const std::string& var = e->kids[1]->name;
      const Expr integrand = e->kids[0];
      auto f = [&](double x) {
        std::map<std::string, double> inner = b;
        inner[var] = x;
        return ev(integrand, inner, tol);
      };
      return adaptive_simpson(f, lo, hi, tol);
    }
    case Kind::Piecewise: {
      double x = ev(e->kids[0], b, tol);
      for (const auto& p : e->pieces) {
        double lo = ev(p.lo, b, tol), hi = ev(p.hi, b, tol);
        if (lo <= x && x < hi) return ev(p.value, b, tol);
      }
      return 0.0;
    }
    default:
      break;
  }
  return eval_numeric(e, b);  // held kinds raise the appropriate error
}

}  // namespace

double eval_with_quad(const Expr& e, const std::map<std::string, double>& bindings,
                      double tol) {
  return ev(e, bindings, tol);
}

double quad(const Expr& e, const std::string& var, double lo, double hi,
            double tol, const std::map<std::string, double>& params) {
  auto f = [&](double x) {
    std::map<std::string, double> b = params;
    b[var] = x;
    return ev(e, b, tol);
  };
  return adaptive_simpson(f, lo, hi, tol);
}

std::vector<std::pair<double, double>> rk4_ivp(
    const Expr& rhs, const std::string& tname, const std::string& uname,
    double u0, double t0, double t1, int steps,
    const std::map<std::string, double>& params) {
  if (steps < 1)
    throw Error(ErrorCode::InvalidArgument, "rk4 needs at least one step");
  std::vector<std::pair<double, double>> out;
  out.reserve(steps + 1);
  double h = (t1 - t0) / steps;
  double t = t0, u = u0;
  std::map<std::string, double> b = params;
  auto f = [&](double tt, double uu) {
    b[tname] = tt;
    b[uname] = uu;
    return eval_with_quad(rhs, b);
  };
  out.push_back({t, u});
  for (int i = 0; i < steps; ++i) {
    double k1 = f(t, u);
    double k2 = f(t + h / 2, u + h / 2 * k1);
    double k3 = f(t + h / 2, u + h / 2 * k2);
    double k4 = f(t + h, u + h * k3);
    u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = t0 + (i + 1) * h;
    out.push_back({t, u});
  }
  return out;
}

std::vector<std::vector<double>> rk4_system(
    const std::vector<Expr>& rhs, const std::string& tname,
    const std::vector<std::string>& unames, const std::vector<double>& u0,
    double t0, double t1, int steps, const std::map<std::string, double>& params) {
  const size_t n = rhs.size();
  if (unames.size() != n || u0.size() != n)
    throw Error(ErrorCode::InvalidArgument, "rk4 system shape mismatch");
  if (steps < 1)
    throw Error(ErrorCode::InvalidArgument, "rk4 needs at least one step");
  std::vector<std::vector<double>> out;
  out.reserve(steps + 1);
  double h = (t1 - t0) / steps;
  std::map<std::string, double> b = params;
  auto f = [&](double t, const std::vector<double>& u) {
    b[tname] = t;
    for (size_t i = 0; i < n; ++i) b[unames[i]] = u[i];
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = eval_with_quad(rhs[i], b);
    return d;
  };
  auto axpy = [&](const std::vector<double>& u, double a,
                  const std::vector<double>& v) {
    std::vector<double> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = u[i] + a * v[i];
    return r;
  };
  std::vector<double> u = u0;
  double t = t0;
  auto row = [&](double tt, const std::vector<double>& uu) {
    std::vector<double> r{tt};
    r.insert(r.end(), uu.begin(), uu.end());
    return r;
  };
  out.push_back(row(t, u));
  for (int s = 0; s < steps; ++s) {
    auto k1 = f(t, u);
    auto k2 = f(t + h / 2, axpy(u, h / 2, k1));
    auto k3 = f(t + h / 2, axpy(u, h / 2, k2));
    auto k4 = f(t + h, axpy(u, h, k3));
    for (size_t i = 0; i < n; ++i)
      u[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t = t0 + (s + 1) * h;
    out.push_back(row(t, u));
  }
  return out;
}

std::vector<std::pair<double, double>> fd_bvp(
    const Expr& g, const std::string& xname, const std::string& uname,
    const std::string& upname, double lo, double hi, double ua, double ub,
    int grid_n, const std::map<std::string, double>& params) {
  if (grid_n < 1)
    throw Error(ErrorCode::InvalidArgument, "fd_bvp needs at least one grid point");
  const int n = grid_n;
  const double h = (hi - lo) / (n + 1);
  std::map<std::string, double> b = params;
  auto geval = [&](double x, double u, double up) {
    b[xname] = x;
    b[uname] = u;
    b[upname] = up;
    return eval_with_quad(g, b);
  };
  // residual of the discrete system at interior node i (0-based)
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) {
    double x = lo + (i + 1) * h;
    u[i] = ua + (ub - ua) * (x - lo) / (hi - lo);  // linear initial guess
  }
  auto residual = [&](const std::vector<double>& v, int i) {
    double left = i == 0 ? ua : v[i - 1];
    double right = i == n - 1 ? ub : v[i + 1];
    double x = lo + (i + 1) * h;
    return (left - 2 * v[i] + right) / (h * h) -
           geval(x, v[i], (right - left) / (2 * h));
  };
  auto norm_inf = [&](const std::vector<double>& f) {
    double m = 0;
    for (double x : f) m = std::max(m, std::fabs(x));
    return m;
  };
  const double tol = 1e-10;
  const int max_iter = 50;
  std::vector<double> f(n), dl(n), dm(n), du(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (int i = 0; i < n; ++i) f[i] = residual(u, i);
    double fn = norm_inf(f);
    if (fn <= tol) {
      std::vector<std::pair<double, double>> out;
      out.reserve(n + 2);
      out.push_back({lo, ua});
      for (int i = 0; i < n; ++i) out.push_back({lo + (i + 1) * h, u[i]});
      out.push_back({hi, ub});
      return out;
    }
    // numeric tridiagonal Jacobian by forward differences
    const double eps = 1e-7;
    for (int i = 0; i < n; ++i) {
      for (int off = -1; off <= 1; ++off) {
        int j = i + off;
        if (j < 0 || j >= n) continue;
        std::vector<double> up = u;
        double step = eps * (1 + std::fabs(u[j]));
        up[j] += step;
        double d = (residual(up, i) - f[i]) / step;
        if (off == -1)
          dl[i] = d;
        else if (off == 0)
          dm[i] = d;
        else
          du[i] = d;
      }
    }
    // Thomas solve J * delta = -f
    std::vector<double> c(n), dvec(n), delta(n);
    double m0 = dm[0];
    if (m0 == 0) throw Error(ErrorCode::NoConvergence, "singular discrete Jacobian");
    c[0] = n > 1 ? du[0] / m0 : 0;
    dvec[0] = -f[0] / m0;
    for (int i = 1; i < n; ++i) {
      double m = dm[i] - dl[i] * c[i - 1];
      if (m == 0) throw Error(ErrorCode::NoConvergence, "singular discrete Jacobian");
      c[i] = i + 1 < n ? du[i] / m : 0;
      dvec[i] = (-f[i] - dl[i] * dvec[i - 1]) / m;
    }
    delta[n - 1] = dvec[n - 1];
    for (int i = n - 2; i >= 0; --i) delta[i] = dvec[i] - c[i] * delta[i + 1];
    // damped update: halve until the residual norm does not grow
    double lambda = 1.0;
    std::vector<double> trial(n);
    for (int halve = 0; halve < 12; ++halve) {
      for (int i = 0; i < n; ++i) trial[i] = u[i] + lambda * delta[i];
      std::vector<double> ft(n);
      for (int i = 0; i < n; ++i) ft[i] = residual(trial, i);
      if (norm_inf(ft) < fn || lambda < 1e-3) break;
      lambda /= 2;
    }
    u = trial;
  }
  throw Error(ErrorCode::NoConvergence,
              "finite-difference Newton did not reach tolerance");
}

std::vector<std::pair<double, double>> sample(
    const Expr& e, const std::string& var, const std::vector<double>& points,
    const std::map<std::string, double>& params) {
  std::vector<std::pair<double, double>> out;
  out.reserve(points.size());
  std::map<std::string, double> b = params;
  for (double x : points) {
    b[var] = x;
    out.push_back({x, eval_with_quad(e, b)});
  }
  return out;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw Error(ErrorCode::InvalidArgument, "bisection endpoints do not bracket a root");
  while (hi - lo > tol) {
    double m = (lo + hi) / 2;
    double fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (flo > 0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace symapprox
