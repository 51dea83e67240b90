#include "core/problem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/calculus.hpp"
#include "core/frechet.hpp"
#include "core/iterate.hpp"
#include "core/newton.hpp"
#include "core/numvalid.hpp"
#include "core/ops.hpp"
#include "core/parse.hpp"
#include "core/perturb.hpp"
#include "core/polyfrac.hpp"
#include "core/render.hpp"
#include "core/series.hpp"

namespace symapprox {

namespace {

// ---------------------------------------------------------------------------
// document parsing
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// split on `sep` outside parentheses
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what,
                       ErrorCode code = ErrorCode::InvalidArgument) {
  throw Error(code, "line " + std::to_string(line) + ": " + key + ": " + what);
}

int parse_int_field(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    int n = std::stoi(v, &pos);
    if (pos != v.size()) fail(line, key, "expected an integer, got '" + v + "'");
    return n;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(line, key, "expected an integer, got '" + v + "'");
  }
}

Expr parse_field(const std::string& v, int line, const std::string& key) {
  try {
    return parse(v);
  } catch (const Error& e) {
    fail(line, key, e.what(), ErrorCode::ParseError);
  }
}

Condition parse_condition(const std::string& text, const Problem& p, int line,
                          const std::string& key) {
  auto sides = split_top(text, '=');
  if (sides.size() != 2)
    fail(line, key, "expected 'u(point) = value', got '" + text + "'");
  Expr lhs = parse_field(sides[0], line, key);
  if (lhs->kind != Kind::UnknownApp || lhs->name != p.unknown ||
      lhs->kids.size() != 1)
    fail(line, key, "left side must be the unknown applied to a point");
  return Condition{lhs->kids[0], parse_field(sides[1], line, key)};
}

Method parse_method(const std::string& v, int line) {
  static const std::map<std::string, Method> table = {
      {"fixedpoint", Method::FixedPoint},
      {"steffensen", Method::Steffensen},
      {"newton", Method::Newton},
      {"newton-bvp", Method::NewtonBvp},
      {"perturb", Method::Perturb},
      {"pade", Method::Pade},
      {"galerkin-elliptic", Method::GalerkinElliptic},
      {"galerkin-spectral", Method::GalerkinSpectral},
      {"galerkin-evolution", Method::GalerkinEvolution},
      {"frechet", Method::Frechet},
  };
  auto it = table.find(v);
  if (it == table.end()) fail(line, "method", "unknown method '" + v + "'");
  return it->second;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Problem p;
  bool saw_method = false, saw_unknown = false;
  std::vector<std::pair<int, std::string>> raw_equations;
  std::vector<std::pair<int, std::string>> deferred;  // conditions need `unknown`
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      fail(lineno, line, "expected 'key: value'", ErrorCode::ParseError);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (value.empty()) fail(lineno, key, "empty value");

    if (key == "symbols") {
      for (const auto& part : split_top(value, ',')) {
        std::istringstream ps(part);
        std::string name, marker;
        ps >> name >> marker;
        if (name.empty()) fail(lineno, key, "empty symbol entry");
        if (!marker.empty() && marker != "generic")
          fail(lineno, key, "unknown marker '" + marker + "'");
        if (marker == "generic") p.generic_symbols.insert(name);
      }
    } else if (key == "unknown") {
      saw_unknown = true;
      Expr u = parse_field(value, lineno, key);
      if (u->kind == Kind::UnknownApp) {
        if (u->kids.size() != 1 || !is_symbol(u->kids[0]))
          fail(lineno, key, "function unknown needs a single symbol argument");
        p.unknown = u->name;
        p.var = u->kids[0];
      } else {
        for (const auto& part : split_top(value, ',')) {
          Expr s = parse_field(part, lineno, key);
          if (!is_symbol(s))
            fail(lineno, key, "'" + part + "' is not a symbol");
          p.scalar_unknowns.push_back(s);
        }
        p.var = p.scalar_unknowns[0];
      }
    } else if (key == "equation") {
      raw_equations.push_back({lineno, value});
    } else if (key == "initial" || key == "boundary") {
      deferred.push_back({lineno, key + ":" + value});
    } else if (key == "method") {
      p.method = parse_method(value, lineno);
      saw_method = true;
    } else if (key == "iterations") {
      p.iterations = parse_int_field(value, lineno, key);
      if (p.iterations < 0) fail(lineno, key, "must be >= 0");
    } else if (key == "order") {
      p.order = parse_int_field(value, lineno, key);
      if (p.order < 0) fail(lineno, key, "must be >= 0");
    } else if (key == "param") {
      p.param = value;
    } else if (key == "basis") {
      p.basis_given = true;
      if (value == "sine")
        p.basis = BasisKind::Sine;
      else if (value == "poly")
        p.basis = BasisKind::PolyBubble;
      else if (value == "hat")
        p.basis = BasisKind::Hat;
      else
        fail(lineno, key, "expected sine | poly | hat, got '" + value + "'");
    } else if (key == "basis_n") {
      p.basis_n = parse_int_field(value, lineno, key);
      if (p.basis_n < 1) fail(lineno, key, "must be >= 1");
    } else if (key == "x0") {
      for (const auto& part : split_top(value, ','))
        p.x0.push_back(parse_field(part, lineno, key));
    } else if (key == "u0") {
      p.u0 = parse_field(value, lineno, key);
    } else if (key == "pade") {
      auto mn = split_top(value, ',');
      if (mn.size() != 2) fail(lineno, key, "expected 'm,n'");
      p.pade_m = parse_int_field(mn[0], lineno, key);
      p.pade_n = parse_int_field(mn[1], lineno, key);
      if (p.pade_m < 0 || p.pade_n < 0) fail(lineno, key, "degrees must be >= 0");
    } else {
      fail(lineno, key, "unknown key", ErrorCode::ParseError);
    }
  }

  if (!saw_method) throw Error(ErrorCode::InvalidArgument, "missing key 'method'");
  if (!saw_unknown) throw Error(ErrorCode::InvalidArgument, "missing key 'unknown'");
  if (raw_equations.empty())
    throw Error(ErrorCode::InvalidArgument, "missing key 'equation'");

  for (const auto& [ln, value] : raw_equations) {
    auto sides = split_top(value, '=');
    if (sides.size() > 2) fail(ln, "equation", "more than one '='");
    Expr lhs = parse_field(sides[0], ln, "equation");
    Expr rhs = sides.size() == 2 ? parse_field(sides[1], ln, "equation") : zero();
    p.equations.push_back(rational_simplify(lhs - rhs));
    // `x = g(x)` keeps its right side: that is the map form
    bool lhs_is_unknown =
        p.unknown.empty() && is_symbol(lhs) && equal(lhs, p.var);
    p.map_rhs.push_back(lhs_is_unknown && sides.size() == 2 ? rhs : Expr());
  }

  for (const auto& [ln, entry] : deferred) {
    auto colon = entry.find(':');
    std::string key = entry.substr(0, colon), value = entry.substr(colon + 1);
    if (p.unknown.empty())
      fail(ln, key, "conditions need a function unknown");
    if (key == "initial") {
      p.initial = parse_condition(value, p, ln, key);
    } else {
      for (const auto& part : split_top(value, ','))
        p.boundary.push_back(parse_condition(part, p, ln, key));
    }
  }
  return p;
}

namespace {

// ---------------------------------------------------------------------------
// operator extraction from the residual
// ---------------------------------------------------------------------------

// residual linear in u': express it as u' = f(var, u) with `usym` for u(var)
struct FirstOrderForm {
  Expr f;
  Expr usym;
};

FirstOrderForm first_order_form(const Expr& residual, const std::string& unknown,
                                const Expr& var) {
  Expr s0 = sym(fresh_name("uval", {residual, var}));
  Expr s1 = sym(fresh_name("uder", {residual, var}));
  Expr flat = rational_simplify(replace_unknown_slots(
      residual, unknown, var, {s0, s1}, ErrorCode::InvalidArgument));
  Expr a1 = rational_simplify(diff(flat, s1));
  if (!free_of(a1, s0) || !free_of(a1, s1) ||
      is_zero(a1).state == ZeroState::Zero)
    throw Error(ErrorCode::InvalidArgument,
                "the equation is not first-order linear in the derivative");
  Substitution drop;
  drop.set(s1, zero());
  Expr f = rational_simplify(-substitute(flat, drop) / a1);
  return {f, s0};
}

// residual affine in u'' as c2·u'' + rest: u'' = g(var, u, u')
struct SecondOrderForm {
  Expr g;
  Expr usym, upsym;
};

SecondOrderForm second_order_form(const Expr& residual,
                                  const std::string& unknown, const Expr& var) {
  Expr s0 = sym(fresh_name("uval", {residual, var}));
  Expr s1 = sym(fresh_name("uder", {residual, var}));
  Expr s2 = sym(fresh_name("uder2", {residual, var}));
  Expr flat = rational_simplify(replace_unknown_slots(
      residual, unknown, var, {s0, s1, s2}, ErrorCode::InvalidArgument));
  Expr c2 = rational_simplify(diff(flat, s2));
  if (!free_of(c2, s2) || is_zero(c2).state == ZeroState::Zero)
    throw Error(ErrorCode::InvalidArgument,
                "the equation is not linear in the second derivative");
  Substitution drop;
  drop.set(s2, zero());
  Expr g = rational_simplify(-substitute(flat, drop) / c2);
  return {g, s0, s1};
}

// symmetric strong form -(p u')' + q u = f with constant p from the residual
struct EllipticForm {
  Expr p, q, f;
};

EllipticForm elliptic_form(const Expr& residual, const std::string& unknown,
                           const Expr& var) {
  Expr s0 = sym(fresh_name("uval", {residual, var}));
  Expr s1 = sym(fresh_name("uder", {residual, var}));
  Expr s2 = sym(fresh_name("uder2", {residual, var}));
  std::vector<Expr> slots{s0, s1, s2};
  Expr flat = rational_simplify(replace_unknown_slots(
      residual, unknown, var, slots, ErrorCode::InvalidArgument));
  Expr c2 = rational_simplify(diff(flat, s2));
  Expr c1 = rational_simplify(diff(flat, s1));
  Expr c0 = rational_simplify(diff(flat, s0));
  Substitution drop;
  for (const auto& s : slots) drop.set(s, zero());
  Expr g = rational_simplify(substitute(flat, drop));
  Expr rebuilt = c2 * s2 + c1 * s1 + c0 * s0 + g;
  if (is_zero(rational_simplify(flat - rebuilt)).state != ZeroState::Zero)
    throw Error(ErrorCode::InvalidArgument,
                "the operator is not linear in the unknown");
  for (const auto& c : {c0, c1, c2})
    for (const auto& s : slots)
      if (!free_of(c, s))
        throw Error(ErrorCode::InvalidArgument,
                    "the operator is not linear in the unknown");
  if (is_zero(c1).state != ZeroState::Zero)
    throw Error(ErrorCode::InvalidArgument,
                "the operator has a first-derivative term; only the symmetric "
                "form -(p u')' + q u = f is projectable");
  if (!free_of(c2, var) || is_zero(c2).state == ZeroState::Zero)
    throw Error(ErrorCode::InvalidArgument,
                "the second-order coefficient must be a nonzero constant");
  return {rational_simplify(-c2), c0, rational_simplify(-g)};
}

// ---------------------------------------------------------------------------
// dispatch helpers
// ---------------------------------------------------------------------------

int steps_or(const Problem& p, int fallback) {
  return p.iterations >= 0 ? p.iterations : fallback;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Basis make_basis(const Problem& p, const Expr& lo, const Expr& hi) {
  switch (p.basis) {
    case BasisKind::Sine: return sine_basis(p.basis_n, p.var, lo, hi);
    case BasisKind::PolyBubble: return poly_bubble_basis(p.basis_n, p.var, lo, hi);
    case BasisKind::Hat: return hat_basis(p.basis_n, p.var, lo, hi);
  }
  throw Error(ErrorCode::InternalError, "unreachable basis kind");
}

// boundary conditions ordered as (lo, hi) by exact comparison when possible
std::pair<Condition, Condition> ordered_boundary(const Problem& p) {
  require(p.boundary.size() == 2, "method needs 'boundary' with two conditions");
  Condition a = p.boundary[0], b = p.boundary[1];
  Expr alo = canon(a.point), blo = canon(b.point);
  if (is_number(alo) && is_number(blo) && alo->number > blo->number)
    std::swap(a, b);
  return {a, b};
}

std::string render_expr(const Expr& e, const std::string& format) {
  return format == "latex" ? to_latex(e) : to_plain(e);
}

// the small-parameter expansion shared by `perturb` and `pade`
PerturbSolution run_perturb_ode(const Problem& p, int order) {
  require(p.initial.has_value(), "perturb needs 'initial'");
  require(!p.param.empty(), "perturb needs 'param' naming the small parameter");
  PerturbProblem pp;
  pp.equation = p.equations[0];
  pp.unknown = p.unknown;
  pp.var = p.var;
  pp.eps = sym(p.param);
  pp.t0 = p.initial->point;
  pp.u_init = p.initial->value;
  return perturb_solve_ode(pp, order);
}

AlgebraicPerturbSolution run_perturb_algebraic(const Problem& p, int order) {
  require(p.x0.size() == 1, "algebraic perturb needs 'x0' with one start value");
  require(!p.param.empty(), "perturb needs 'param' naming the small parameter");
  return perturb_solve_algebraic(p.equations[0], p.var, sym(p.param), p.x0[0],
                                 order);
}

// ---------------------------------------------------------------------------
// numeric output: sampling and references
// ---------------------------------------------------------------------------

struct SampleSpec {
  double lo, hi;
  int n;
};

SampleSpec parse_samples(const std::string& s) {
  auto parts = split_top(s, ':');
  if (parts.size() != 3)
    throw Error(ErrorCode::InvalidArgument,
                "--samples expects 'lo:hi:n', got '" + s + "'");
  try {
    size_t p1 = 0, p2 = 0;
    double lo = std::stod(parts[0], &p1);
    double hi = std::stod(parts[1], &p2);
    size_t p3 = 0;
    int n = std::stoi(parts[2], &p3);
    if (p1 != parts[0].size() || p2 != parts[1].size() || p3 != parts[2].size())
      throw std::invalid_argument("trailing characters");
    if (n < 1) throw std::invalid_argument("n < 1");
    return {lo, hi, n};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument,
                "--samples expects 'lo:hi:n', got '" + s + "'");
  }
}

std::vector<double> sample_points(const SampleSpec& s) {
  std::vector<double> pts;
  if (s.n == 1) {
    pts.push_back(s.lo);
    return pts;
  }
  for (int i = 0; i < s.n; ++i)
    pts.push_back(s.lo + (s.hi - s.lo) * i / (s.n - 1));
  return pts;
}

// reference values at the sample points, or empty when no reference is asked
std::vector<double> reference_column(const Problem& p, const RunOptions& opt,
                                     const std::vector<double>& pts) {
  if (opt.reference.empty()) return {};
  require(!p.unknown.empty(), "--reference needs a function unknown");
  if (opt.reference == "rk4") {
    require(p.initial.has_value(), "--reference rk4 needs 'initial'");
    FirstOrderForm fo = first_order_form(p.equations[0], p.unknown, p.var);
    double t0 = eval_numeric(p.initial->point, {});
    double v0 = eval_numeric(p.initial->value, {});
    std::vector<double> out;
    for (double x : pts) {
      if (x == t0) {
        out.push_back(v0);
        continue;
      }
      auto traj = rk4_ivp(fo.f, p.var->name, fo.usym->name, v0, t0, x, 2000);
      out.push_back(traj.back().second);
    }
    return out;
  }
  if (opt.reference == "fd") {
    auto [ca, cb] = ordered_boundary(p);
    SecondOrderForm so = second_order_form(p.equations[0], p.unknown, p.var);
    double lo = eval_numeric(ca.point, {}), hi = eval_numeric(cb.point, {});
    double ua = eval_numeric(ca.value, {}), ub = eval_numeric(cb.value, {});
    auto grid = fd_bvp(so.g, p.var->name, so.usym->name, so.upsym->name, lo, hi,
                       ua, ub, 999);
    double h = (hi - lo) / static_cast<double>(grid.size() - 1);
    std::vector<double> out;
    for (double x : pts) {
      double idx = (x - lo) / h;
      long i = std::max(0L, std::min(static_cast<long>(grid.size()) - 2,
                                     static_cast<long>(std::floor(idx))));
      double w = idx - static_cast<double>(i);
      out.push_back(grid[i].second * (1 - w) + grid[i + 1].second * w);
    }
    return out;
  }
  throw Error(ErrorCode::InvalidArgument,
              "--reference expects rk4 or fd, got '" + opt.reference + "'");
}

std::string csv_block(const Expr& result, const Problem& p,
                      const RunOptions& opt) {
  SampleSpec spec = parse_samples(opt.samples);
  std::vector<double> pts = sample_points(spec);
  std::vector<double> ref = reference_column(p, opt, pts);
  std::string var = p.var ? p.var->name : std::string("x");
  std::string out = "x,approx";
  if (!ref.empty()) out += ",reference";
  out += "\n";
  for (size_t i = 0; i < pts.size(); ++i) {
    out += format_double(pts[i]) + "," +
           format_double(eval_with_quad(result, {{var, pts[i]}}));
    if (!ref.empty()) out += "," + format_double(ref[i]);
    out += "\n";
  }
  return out;
}

// true when some Integral node could have been evaluated but was not
bool has_held_integral(const Expr& e) {
  if (e->kind == Kind::Integral && !contains_kind(e, Kind::UnknownApp) &&
      !contains_kind(e, Kind::Wildcard))
    return true;
  for (const auto& k : e->kids)
    if (has_held_integral(k)) return true;
  if (e->kind == Kind::Piecewise)
    for (const auto& piece : e->pieces)
      if (has_held_integral(piece.value)) return true;
  return false;
}

std::string matrix_line(const std::string& label, const Matrix& m,
                        const std::string& format) {
  std::string out = label + " = [";
  for (size_t i = 0; i < m.size(); ++i) {
    out += i ? ", [" : "[";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ", ";
      out += render_expr(m[i][j], format);
    }
    out += "]";
  }
  return out + "]\n";
}

std::string vector_line(const std::string& label, const Vector& v,
                        const std::string& format) {
  std::string out = label + " = [";
  for (size_t j = 0; j < v.size(); ++j) {
    if (j) out += ", ";
    out += render_expr(v[j], format);
  }
  return out + "]\n";
}

}  // namespace

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Ok:
      return 0;
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnboundSymbol:
    case ErrorCode::NotPolynomialInSymbol:
      return 2;
    case ErrorCode::UnresolvedIntegral:
    case ErrorCode::HeldNode:
    case ErrorCode::UnresolvedInnerProduct:
      return 4;
    default:
      return 3;
  }
}

RunResult run_problem(const std::string& text, const RunOptions& opt) {
  if (opt.format != "plain" && opt.format != "latex" && opt.format != "csv")
    throw Error(ErrorCode::InvalidArgument,
                "--format expects plain | latex | csv, got '" + opt.format + "'");
  if (opt.format == "csv" && opt.samples.empty())
    throw Error(ErrorCode::InvalidArgument, "--format csv needs --samples");
  if (!opt.reference.empty() && opt.samples.empty())
    throw Error(ErrorCode::InvalidArgument, "--reference needs --samples");
  if (opt.max_passes < 1)
    throw Error(ErrorCode::InvalidArgument, "--max-passes must be >= 1");

  Problem p = parse_problem(text);
  SolveReport report;
  std::vector<std::string> lines;   // main output, one entry per line
  Expr result;                      // expression result when there is one
  bool symbolic_by_nature = false;  // frechet: unknowns belong in the output

  switch (p.method) {
    case Method::FixedPoint: {
      int n = steps_or(p, 1);
      if (p.unknown.empty()) {
        require(p.x0.size() == 1, "scalar fixedpoint needs 'x0' with one value");
        require(p.map_rhs.size() == 1 && p.map_rhs[0],
                "scalar fixedpoint needs the equation written as x = g(x)");
        OperatorDef op{"", p.var, p.map_rhs[0]};
        result = nest(op, p.x0[0], n, &report, opt.allow_held);
      } else {
        require(p.initial.has_value(), "fixedpoint needs 'initial'");
        require(!p.param.empty(),
                "fixedpoint needs 'param' (the linear kernel coefficient)");
        Expr kernel = parse(p.param);
        FirstOrderForm fo = first_order_form(p.equations[0], p.unknown, p.var);
        Expr q_flat = rational_simplify(fo.f + kernel * fo.usym);
        Substitution back;
        back.set(fo.usym, unknown(p.unknown, {p.var}));
        Expr q = substitute(q_flat, back);
        OperatorDef op = picard_operator(p.unknown, p.var, kernel, q,
                                         p.initial->point, p.initial->value);
        Expr start = p.u0 ? p.u0 : p.initial->value;
        result = nest(op, start, n, &report, opt.allow_held);
      }
      break;
    }
    case Method::Steffensen: {
      require(p.unknown.empty(), "steffensen works on scalar maps");
      require(p.x0.size() == 1, "steffensen needs 'x0' with one value");
      require(p.map_rhs.size() == 1 && p.map_rhs[0],
              "steffensen needs the equation written as x = g(x)");
      OperatorDef op{"", p.var, p.map_rhs[0]};
      result = steffensen(op, p.x0[0], steps_or(p, 0), &report);
      break;
    }
    case Method::Newton: {
      require(!p.scalar_unknowns.empty(), "newton needs scalar unknowns");
      AlgebraicSystem sys{p.equations, p.scalar_unknowns, p.x0};
      auto iterates = newton_algebraic(sys, steps_or(p, 1), &report);
      const auto& last = iterates.back();
      std::string line;
      for (size_t j = 0; j < last.size(); ++j) {
        if (j) line += ", ";
        line += p.scalar_unknowns[j]->name + " = " +
                render_expr(last[j], opt.format);
      }
      lines.push_back(line);
      break;
    }
    case Method::NewtonBvp: {
      require(!p.unknown.empty(), "newton-bvp needs a function unknown");
      require(static_cast<bool>(p.u0), "newton-bvp needs 'u0'");
      auto [ca, cb] = ordered_boundary(p);
      BvpProblem bp{p.equations[0], p.unknown, p.var,
                    ca.point,       cb.point,  ca.value,
                    cb.value,       p.u0};
      NewtonOptions no;
      no.backend =
          p.basis_given ? LinearBackend::Galerkin : LinearBackend::ClosedForm;
      no.basis = p.basis;
      no.basis_n = p.basis_n;
      NewtonResult nr = newton_functional(bp, steps_or(p, 1), no);
      report.merge(nr.report);
      result = nr.iterates.back();
      break;
    }
    case Method::Perturb: {
      if (p.unknown.empty()) {
        auto sol = run_perturb_algebraic(p, p.order);
        report.merge(sol.report);
        result = sol.truncated;
      } else {
        auto sol = run_perturb_ode(p, p.order);
        report.merge(sol.report);
        result = sol.truncated;
      }
      break;
    }
    case Method::Pade: {
      int need = std::max(p.order, p.pade_m + p.pade_n);
      Series ser;
      ser.param = sym(p.param.empty() ? "e" : p.param);
      ser.order = need;
      if (p.unknown.empty()) {
        auto sol = run_perturb_algebraic(p, need);
        report.merge(sol.report);
        ser.coeffs = sol.coeffs;
      } else {
        auto sol = run_perturb_ode(p, need);
        report.merge(sol.report);
        if (sol.achieved_order < need)
          throw Error(ErrorCode::UnresolvedIntegral,
                      "the expansion stopped before the order the "
                      "approximant needs");
        ser.coeffs = sol.coeffs;
      }
      std::vector<Expr> generic;
      PadeApproximant pa = pade(ser, p.pade_m, p.pade_n, &generic);
      for (const auto& g : generic) report.note_generic(g);
      result = rational_simplify(pa.as_expr());
      break;
    }
    case Method::GalerkinElliptic: {
      require(!p.unknown.empty(), "galerkin-elliptic needs a function unknown");
      auto [ca, cb] = ordered_boundary(p);
      for (const auto& c : {ca, cb})
        require(is_zero(c.value).state == ZeroState::Zero,
                "galerkin-elliptic needs homogeneous boundary values");
      EllipticForm ef = elliptic_form(p.equations[0], p.unknown, p.var);
      InnerProductSpec ip =
          elliptic_weak_form(ef.p, ef.q, ef.f, p.var, ca.point, cb.point);
      GalerkinSolution gs = galerkin_elliptic(ip, make_basis(p, ca.point, cb.point));
      report.merge(gs.report);
      result = gs.approximant;
      break;
    }
    case Method::GalerkinSpectral: {
      require(!p.unknown.empty(), "galerkin-spectral needs a function unknown");
      auto [ca, cb] = ordered_boundary(p);
      for (const auto& c : {ca, cb})
        require(is_zero(c.value).state == ZeroState::Zero,
                "galerkin-spectral needs homogeneous boundary values");
      std::string lname = p.param.empty() ? "lambda" : p.param;
      auto parts = collect_powers(p.equations[0], lname, 1);
      Expr mass_side = rational_simplify(-parts[1]);
      require(is_zero(rational_simplify(mass_side - unknown(p.unknown, {p.var})))
                      .state == ZeroState::Zero,
              "the eigenvalue must multiply the unknown alone");
      EllipticForm ef = elliptic_form(parts[0], p.unknown, p.var);
      require(is_zero(ef.f).state == ZeroState::Zero,
              "spectral problems must be homogeneous");
      InnerProductSpec ip =
          elliptic_weak_form(ef.p, ef.q, zero(), p.var, ca.point, cb.point);
      SpectralSolution ss =
          galerkin_spectral(ip, make_basis(p, ca.point, cb.point), lname);
      report.merge(ss.report);
      if (auto exact = spectral_exact_eigenvalues(ss)) {
        std::vector<Expr> vals = *exact;
        std::stable_sort(vals.begin(), vals.end(),
                         [](const Expr& a, const Expr& b) {
                           try {
                             return eval_numeric(a, {}) < eval_numeric(b, {});
                           } catch (const Error&) {
                             return false;
                           }
                         });
        for (size_t i = 0; i < vals.size(); ++i)
          lines.push_back(lname + std::to_string(i + 1) + " = " +
                          render_expr(vals[i], opt.format));
      } else {
        for (size_t i = 0; i < ss.eigenvalues.size(); ++i)
          lines.push_back(lname + std::to_string(i + 1) + " = " +
                          format_double(ss.eigenvalues[i]));
      }
      break;
    }
    case Method::GalerkinEvolution: {
      require(!p.unknown.empty(), "galerkin-evolution needs a function unknown");
      auto [ca, cb] = ordered_boundary(p);
      for (const auto& c : {ca, cb})
        require(is_zero(c.value).state == ZeroState::Zero,
                "galerkin-evolution needs homogeneous boundary values");
      EllipticForm ef = elliptic_form(p.equations[0], p.unknown, p.var);
      require(is_zero(ef.f).state == ZeroState::Zero,
              "the spatial operator must be homogeneous (put sources aside)");
      InnerProductSpec ip =
          elliptic_weak_form(ef.p, ef.q, zero(), p.var, ca.point, cb.point);
      EvolutionSystem es =
          galerkin_evolution(ip, make_basis(p, ca.point, cb.point), p.u0);
      report.merge(es.report);
      lines.push_back(matrix_line("K", es.stiffness, opt.format));
      lines.push_back(matrix_line("M", es.mass, opt.format));
      lines.push_back(vector_line("c0", es.initial_projection, opt.format));
      // the three labelled lines already end in '\n'
      for (auto& l : lines) l.pop_back();
      break;
    }
    case Method::Frechet: {
      require(!p.unknown.empty(), "frechet needs a function unknown");
      std::string dir = p.param.empty() ? "v" : p.param;
      result = frechet_derivative(p.equations[0], p.unknown, dir);
      symbolic_by_nature = true;
      break;
    }
  }

  // resolution passes for held forms that became computable
  if (result && !symbolic_by_nature) {
    for (int pass = 0; pass < opt.max_passes; ++pass) {
      if (!has_held_integral(result)) break;
      Expr next = rational_simplify(resolve_integrals(result, &report));
      if (equal(next, result)) break;
      result = next;
    }
    if (!opt.allow_held && has_held_integral(result))
      throw Error(ErrorCode::UnresolvedIntegral,
                  "the result still contains unresolved integrals "
                  "(run with --allow-held to emit them)");
  }

  RunResult rr;
  if (result) lines.push_back(render_expr(result, opt.format));
  std::string body;
  for (const auto& l : lines) body += l + "\n";
  if (!opt.samples.empty()) {
    require(static_cast<bool>(result),
            "--samples needs an expression-valued result");
    std::string csv = csv_block(result, p, opt);
    body = opt.format == "csv" ? csv : body + csv;
  }
  rr.output = body;

  std::string rep;
  if (!p.generic_symbols.empty()) {
    rep += "declared generic:";
    bool first = true;
    for (const auto& s : p.generic_symbols) {
      rep += (first ? " " : ", ") + s;
      first = false;
    }
    rep += "\n";
  }
  rep += report.to_text();
  rr.report = rep;
  return rr;
}

}  // namespace symapprox
