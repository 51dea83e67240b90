#include "core/render.hpp"

#include <cstdio>
#include <sstream>

namespace symapprox {

namespace {

enum Prec { P_SUM = 1, P_PROD = 2, P_POW = 3, P_ATOM = 4 };

std::string plain(const Expr& e, int need);

std::string q_str(const mpq_class& q) { return q.get_str(); }

// true if the term renders with a leading minus sign
bool leading_minus(const Expr& e) {
  if (is_number(e)) return sgn(e->number) < 0;
  if (e->kind == Kind::Product && !e->kids.empty() && is_number(e->kids[0]))
    return sgn(e->kids[0]->number) < 0;
  return false;
}

// negate the rational coefficient of a term (for "a - b" rendering)
Expr strip_minus(const Expr& e) {
  if (is_number(e)) return make_number(-e->number);
  std::vector<Expr> kids = e->kids;
  kids[0] = make_number(-kids[0]->number);
  if (kids.size() == 2 && is_one_literal(kids[0])) return kids[1];
  if (is_one_literal(kids[0])) kids.erase(kids.begin());
  return make_product(std::move(kids));
}

std::string plain_product(const Expr& e, int need) {
  // split into numerator and denominator factors
  mpq_class coeff(1);
  std::vector<Expr> nums, dens;
  std::vector<Expr> fs = e->kind == Kind::Product ? e->kids : std::vector<Expr>{e};
  bool coeff_seen = false;
  for (const auto& f : fs) {
    if (!coeff_seen && is_number(f)) {
      coeff = f->number;
      coeff_seen = true;
      continue;
    }
    if (f->kind == Kind::Power && is_number(f->kids[1]) &&
        sgn(f->kids[1]->number) < 0) {
      mpq_class x = -f->kids[1]->number;
      if (x == 1)
        dens.push_back(f->kids[0]);
      else
        dens.push_back(make_power(f->kids[0], make_number(x)));
      continue;
    }
    nums.push_back(f);
  }
  bool negative = sgn(coeff) < 0;
  mpq_class ac = abs(coeff);
  std::string num_str;
  {
    std::vector<std::string> parts;
    if (ac.get_num() != 1 || nums.empty()) parts.push_back(ac.get_num().get_str());
    for (const auto& f : nums) parts.push_back(plain(f, P_PROD));
    if (parts.empty()) parts.push_back("1");
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) os << "*";
      os << parts[i];
    }
    num_str = os.str();
  }
  std::string out;
  if (dens.empty() && ac.get_den() == 1) {
    out = num_str;
  } else {
    std::vector<std::string> dparts;
    if (ac.get_den() != 1) dparts.push_back(ac.get_den().get_str());
    for (const auto& f : dens) dparts.push_back(plain(f, P_POW));
    std::string den_str;
    if (dparts.size() == 1 && dens.size() <= 1) {
      den_str = dparts[0];
    } else {
      std::ostringstream os;
      os << "(";
      for (size_t i = 0; i < dparts.size(); ++i) {
        if (i) os << "*";
        os << dparts[i];
      }
      os << ")";
      den_str = os.str();
    }
    out = num_str + "/" + den_str;
  }
  if (negative) {
    out = "-" + out;
    if (need > P_SUM) out = "(" + out + ")";
    return out;
  }
  if (need > P_PROD) out = "(" + out + ")";
  return out;
}

std::string plain(const Expr& e, int need) {
  switch (e->kind) {
    case Kind::Number: {
      const mpq_class& q = e->number;
      std::string s = q_str(q);
      bool atomic = sgn(q) >= 0 && q.get_den() == 1;
      if (!atomic && need > P_PROD) return "(" + s + ")";
      if (sgn(q) < 0 && need > P_SUM && q.get_den() == 1) return "(" + s + ")";
      return s;
    }
    case Kind::Symbol:
    case Kind::Wildcard:
      return e->name;
    case Kind::Sum: {
      std::ostringstream os;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        const Expr& t = e->kids[i];
        if (i == 0) {
          os << plain(t, P_SUM);
        } else if (leading_minus(t)) {
          os << " - " << plain(strip_minus(t), P_PROD);
        } else {
          os << " + " << plain(t, P_PROD);
        }
      }
      std::string s = os.str();
      if (need > P_SUM) return "(" + s + ")";
      return s;
    }
    case Kind::Product:
      return plain_product(e, need);
    case Kind::Power: {
      if (is_number(e->kids[1]) && sgn(e->kids[1]->number) < 0)
        return plain_product(e, need);  // bare x^-1 renders as 1/x
      std::string b = plain(e->kids[0], P_ATOM);
      const Expr& x = e->kids[1];
      bool bare = (is_number(x) && sgn(x->number) > 0 && x->number.get_den() == 1) ||
                  is_symbol(x);
      std::string xs = bare ? plain(x, P_ATOM) : "(" + plain(x, P_SUM) + ")";
      std::string s = b + "^" + xs;
      if (need > P_POW) return "(" + s + ")";
      return s;
    }
    case Kind::FuncApp:
      return std::string(func_name(e->func)) + "(" + plain(e->kids[0], P_SUM) + ")";
    case Kind::UnknownApp: {
      std::ostringstream os;
      os << e->name << "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << ", ";
        os << plain(e->kids[i], P_SUM);
      }
      os << ")";
      return os.str();
    }
    case Kind::Deriv: {
      std::ostringstream os;
      os << "D(" << plain(e->kids[0], P_SUM) << ", " << plain(e->kids[1], P_SUM);
      if (e->order != 1) os << ", " << e->order;
      os << ")";
      return os.str();
    }
    case Kind::Integral: {
      std::ostringstream os;
      os << "Int(" << plain(e->kids[0], P_SUM) << ", " << plain(e->kids[1], P_SUM)
         << ", " << plain(e->kids[2], P_SUM) << ", " << plain(e->kids[3], P_SUM)
         << ")";
      return os.str();
    }
    case Kind::Piecewise: {
      std::ostringstream os;
      os << "pw(" << plain(e->kids[0], P_SUM);
      for (const auto& p : e->pieces)
        os << ", " << plain(p.lo, P_SUM) << ", " << plain(p.hi, P_SUM) << ", "
           << plain(p.value, P_SUM);
      os << ")";
      return os.str();
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

std::string latex(const Expr& e, int need);

std::string latex_product(const Expr& e, int need) {
  mpq_class coeff(1);
  std::vector<Expr> nums, dens;
  std::vector<Expr> fs = e->kind == Kind::Product ? e->kids : std::vector<Expr>{e};
  bool coeff_seen = false;
  for (const auto& f : fs) {
    if (!coeff_seen && is_number(f)) {
      coeff = f->number;
      coeff_seen = true;
      continue;
    }
    if (f->kind == Kind::Power && is_number(f->kids[1]) &&
        sgn(f->kids[1]->number) < 0) {
      mpq_class x = -f->kids[1]->number;
      dens.push_back(x == 1 ? f->kids[0] : make_power(f->kids[0], make_number(x)));
      continue;
    }
    nums.push_back(f);
  }
  bool negative = sgn(coeff) < 0;
  mpq_class ac = abs(coeff);
  auto join = [](const std::vector<std::string>& ps) {
    std::ostringstream os;
    for (size_t i = 0; i < ps.size(); ++i) {
      if (i) os << " \\, ";
      os << ps[i];
    }
    return os.str();
  };
  std::vector<std::string> nparts, dparts;
  if (ac.get_num() != 1 || nums.empty()) nparts.push_back(ac.get_num().get_str());
  for (const auto& f : nums) nparts.push_back(latex(f, P_PROD));
  if (nparts.empty()) nparts.push_back("1");
  if (ac.get_den() != 1) dparts.push_back(ac.get_den().get_str());
  for (const auto& f : dens) dparts.push_back(latex(f, P_PROD));
  std::string out;
  if (dparts.empty())
    out = join(nparts);
  else
    out = "\\frac{" + join(nparts) + "}{" + join(dparts) + "}";
  if (negative) {
    out = "-" + out;
    if (need > P_SUM) out = "\\left(" + out + "\\right)";
    return out;
  }
  if (need > P_PROD && dparts.empty()) out = "\\left(" + out + "\\right)";
  return out;
}

std::string latex(const Expr& e, int need) {
  switch (e->kind) {
    case Kind::Number: {
      const mpq_class& q = e->number;
      if (q.get_den() == 1) {
        std::string s = q.get_num().get_str();
        if (sgn(q) < 0 && need > P_SUM) return "\\left(" + s + "\\right)";
        return s;
      }
      std::string s;
      if (sgn(q) < 0) s = "-";
      s += "\\frac{" + mpz_class(abs(q.get_num())).get_str() + "}{" +
           q.get_den().get_str() + "}";
      if (sgn(q) < 0 && need > P_SUM) return "\\left(" + s + "\\right)";
      return s;
    }
    case Kind::Symbol:
      if (e->name == "pi") return "\\pi";
      if (e->name == "lambda") return "\\lambda";
      return e->name;
    case Kind::Wildcard:
      return e->name;
    case Kind::Sum: {
      std::ostringstream os;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        const Expr& t = e->kids[i];
        if (i == 0) {
          os << latex(t, P_SUM);
        } else if (leading_minus(t)) {
          os << " - " << latex(strip_minus(t), P_PROD);
        } else {
          os << " + " << latex(t, P_PROD);
        }
      }
      if (need > P_SUM) return "\\left(" + os.str() + "\\right)";
      return os.str();
    }
    case Kind::Product:
      return latex_product(e, need);
    case Kind::Power: {
      if (is_number(e->kids[1]) && sgn(e->kids[1]->number) < 0)
        return latex_product(e, need);
      if (e->kids[0]->kind == Kind::FuncApp && e->kids[0]->func == Func::Exp)
        return latex(e->kids[0], need);  // canon folds this anyway
      std::string b = latex(e->kids[0], P_ATOM);
      std::string x = latex(e->kids[1], P_SUM);
      std::string s = b + "^{" + x + "}";
      if (need > P_POW) return "\\left(" + s + "\\right)";
      return s;
    }
    case Kind::FuncApp: {
      std::string a = latex(e->kids[0], P_SUM);
      switch (e->func) {
        case Func::Sin: return "\\sin\\left(" + a + "\\right)";
        case Func::Cos: return "\\cos\\left(" + a + "\\right)";
        case Func::Exp: return "e^{" + a + "}";
        case Func::Log: return "\\log\\left(" + a + "\\right)";
      }
      return a;
    }
    case Kind::UnknownApp: {
      std::ostringstream os;
      os << e->name << "\\left(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << ", ";
        os << latex(e->kids[i], P_SUM);
      }
      os << "\\right)";
      return os.str();
    }
    case Kind::Deriv: {
      std::string v = latex(e->kids[1], P_ATOM);
      std::ostringstream os;
      if (e->order == 1)
        os << "\\frac{\\mathrm{d}}{\\mathrm{d}" << v << "}";
      else
        os << "\\frac{\\mathrm{d}^{" << e->order << "}}{\\mathrm{d}" << v << "^{"
           << e->order << "}}";
      os << "\\left[" << latex(e->kids[0], P_SUM) << "\\right]";
      return os.str();
    }
    case Kind::Integral: {
      std::ostringstream os;
      os << "\\int_{" << latex(e->kids[2], P_SUM) << "}^{" << latex(e->kids[3], P_SUM)
         << "} " << latex(e->kids[0], P_SUM) << " \\,\\mathrm{d}"
         << latex(e->kids[1], P_ATOM);
      return os.str();
    }
    case Kind::Piecewise: {
      std::ostringstream os;
      os << "\\begin{cases}";
      for (const auto& p : e->pieces)
        os << latex(p.value, P_SUM) << " & " << latex(p.lo, P_SUM) << " \\le "
           << latex(e->kids[0], P_SUM) << " < " << latex(p.hi, P_SUM) << " \\\\ ";
      os << "0 & \\text{otherwise} \\end{cases}";
      return os.str();
    }
  }
  return "?";
}

}  // namespace

std::string to_plain(const Expr& e) { return plain(e, P_SUM); }

std::string to_latex(const Expr& e) { return latex(e, P_SUM); }

std::string format_double(double v, int significant) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

}  // namespace symapprox
