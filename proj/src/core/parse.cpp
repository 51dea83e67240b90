#include "core/parse.hpp"

#include <cctype>
#include <vector>

#include "core/errors.hpp"

namespace symapprox {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                what + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (eat('+'))
        e = e + parse_term();
      else if (eat('-'))
        e = e - parse_term();
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (eat('*'))
        e = e * parse_factor();
      else if (eat('/'))
        e = e / parse_factor();
      else
        return e;
    }
  }

  Expr parse_factor() {
    if (eat('-')) return -parse_factor();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (eat('^')) return pow(base, parse_factor());
    return base;
  }

  Expr parse_number() {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    std::string intpart = s.substr(start, pos - start);
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      size_t fstart = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      std::string frac = s.substr(fstart, pos - fstart);
      if (intpart.empty() && frac.empty()) fail("malformed number");
      // read the decimal exactly: d.f = (d*10^n + f) / 10^n
      mpz_class numr(intpart.empty() ? "0" : intpart);
      mpz_class den(1);
      for (size_t i = 0; i < frac.size(); ++i) den *= 10;
      numr *= den;
      if (!frac.empty()) numr += mpz_class(frac);
      mpq_class q(numr, den);
      q.canonicalize();
      return make_number(q);
    }
    if (intpart.empty()) fail("malformed number");
    return make_number(mpq_class(mpz_class(intpart)));
  }

  std::vector<Expr> parse_args() {
    expect('(');
    std::vector<Expr> args;
    if (!peek(')')) {
      args.push_back(parse_expr());
      while (eat(',')) args.push_back(parse_expr());
    }
    expect(')');
    return args;
  }

  Expr parse_call(const std::string& name) {
    if (name == "sin" || name == "cos" || name == "exp" || name == "log") {
      auto args = parse_args();
      if (args.size() != 1) fail(name + " takes one argument");
      if (name == "sin") return sin_(args[0]);
      if (name == "cos") return cos_(args[0]);
      if (name == "exp") return exp_(args[0]);
      return log_(args[0]);
    }
    if (name == "D") {
      auto args = parse_args();
      if (args.size() != 2 && args.size() != 3) fail("D takes 2 or 3 arguments");
      int order = 1;
      if (args.size() == 3) {
        auto n = as_small_int(args[2]);
        if (!n || *n < 1) fail("derivative order must be a positive integer");
        order = static_cast<int>(*n);
      }
      if (!is_symbol(args[1])) fail("derivative variable must be a symbol");
      return deriv(args[0], args[1], order);
    }
    if (name == "Int") {
      auto args = parse_args();
      if (args.size() != 4) fail("Int takes 4 arguments");
      if (!is_symbol(args[1])) fail("integration variable must be a symbol");
      return integral(args[0], args[1], args[2], args[3]);
    }
    if (name == "pw") {
      auto args = parse_args();
      if (args.size() < 4 || (args.size() - 1) % 3 != 0)
        fail("pw takes a variable plus (lo, hi, value) triples");
      if (!is_symbol(args[0])) fail("piecewise variable must be a symbol");
      std::vector<PiecewisePiece> pieces;
      for (size_t i = 1; i + 2 < args.size(); i += 3)
        pieces.push_back({args[i], args[i + 1], args[i + 2]});
      return piecewise(args[0], std::move(pieces));
    }
    return unknown(name, parse_args());
  }

  Expr parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      bool wildcard = name.back() == '_';
      if (peek('(')) {
        if (wildcard) fail("wildcard cannot be applied to arguments");
        return parse_call(name);
      }
      if (wildcard) return make_wildcard(name, WildConstraint::Any);
      return sym(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr parse(const std::string& text) {
  Parser p(text);
  Expr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return canon(e);
}

}  // namespace symapprox
