// C interface: opaque handles over the immutable expression values, a
// thread-local last-error slot, and the problem runner used by the CLI.

#include "symapprox.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <map>
#include <string>
#include <utility>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/expr.hpp"
#include "core/ops.hpp"
#include "core/parse.hpp"
#include "core/polyfrac.hpp"
#include "core/problem.hpp"
#include "core/render.hpp"

struct sym_expr {
  symapprox::Expr rep;
};

namespace {

using symapprox::Error;
using symapprox::ErrorCode;
using symapprox::Expr;

thread_local int g_status = 0;
thread_local std::string g_message;

void clear_error() {
  g_status = 0;
  g_message.clear();
}

void record(ErrorCode code, const char* what) {
  g_status = static_cast<int>(code);
  g_message = what ? what : "";
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f(), converting engine exceptions into the thread-local error slot.
// `fail` is what the wrapper returns on error.
template <typename F, typename R>
R guarded(F&& f, R fail) {
  clear_error();
  try {
    return f();
  } catch (const Error& e) {
    record(e.code(), e.what());
  } catch (const std::exception& e) {
    record(ErrorCode::InternalError, e.what());
  } catch (...) {
    record(ErrorCode::InternalError, "unknown failure");
  }
  return fail;
}

sym_expr* wrap(Expr e) { return new sym_expr{std::move(e)}; }

bool check_handle(const sym_expr* e) {
  if (e) return true;
  record(ErrorCode::InvalidArgument, "null expression handle");
  return false;
}

bool check_text(const char* s, const char* what) {
  if (s) return true;
  record(ErrorCode::InvalidArgument, std::string("null ").append(what).c_str());
  return false;
}

}  // namespace

extern "C" {

const char* sym_version(void) { return "1.0.0"; }

int sym_last_status(void) { return g_status; }

const char* sym_last_message(void) { return g_message.c_str(); }

sym_expr* sym_parse(const char* text) {
  clear_error();
  if (!check_text(text, "input text")) return nullptr;
  return guarded([&] { return wrap(symapprox::parse(text)); },
                 static_cast<sym_expr*>(nullptr));
}

void sym_free(sym_expr* e) { delete e; }

char* sym_render(const sym_expr* e) {
  clear_error();
  if (!check_handle(e)) return nullptr;
  return guarded([&] { return copy_string(symapprox::to_plain(e->rep)); },
                 static_cast<char*>(nullptr));
}

char* sym_render_latex(const sym_expr* e) {
  clear_error();
  if (!check_handle(e)) return nullptr;
  return guarded([&] { return copy_string(symapprox::to_latex(e->rep)); },
                 static_cast<char*>(nullptr));
}

void sym_free_string(char* s) { std::free(s); }

sym_expr* sym_add(const sym_expr* a, const sym_expr* b) {
  clear_error();
  if (!check_handle(a) || !check_handle(b)) return nullptr;
  return guarded([&] { return wrap(a->rep + b->rep); },
                 static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_sub(const sym_expr* a, const sym_expr* b) {
  clear_error();
  if (!check_handle(a) || !check_handle(b)) return nullptr;
  return guarded([&] { return wrap(a->rep - b->rep); },
                 static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_mul(const sym_expr* a, const sym_expr* b) {
  clear_error();
  if (!check_handle(a) || !check_handle(b)) return nullptr;
  return guarded([&] { return wrap(a->rep * b->rep); },
                 static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_div(const sym_expr* a, const sym_expr* b) {
  clear_error();
  if (!check_handle(a) || !check_handle(b)) return nullptr;
  return guarded([&] { return wrap(a->rep / b->rep); },
                 static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_simplify(const sym_expr* e) {
  clear_error();
  if (!check_handle(e)) return nullptr;
  return guarded([&] { return wrap(symapprox::rational_simplify(e->rep)); },
                 static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_diff(const sym_expr* e, const char* var, int order) {
  clear_error();
  if (!check_handle(e) || !check_text(var, "variable name")) return nullptr;
  if (order < 0) {
    record(ErrorCode::InvalidArgument, "derivative order must be >= 0");
    return nullptr;
  }
  return guarded(
      [&] { return wrap(symapprox::diff(e->rep, symapprox::sym(var), order)); },
      static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_integrate(const sym_expr* e, const char* var, const sym_expr* lo,
                        const sym_expr* hi) {
  clear_error();
  if (!check_handle(e) || !check_text(var, "variable name") ||
      !check_handle(lo) || !check_handle(hi))
    return nullptr;
  return guarded(
      [&] {
        return wrap(symapprox::integrate(e->rep, symapprox::sym(var), lo->rep,
                                         hi->rep));
      },
      static_cast<sym_expr*>(nullptr));
}

sym_expr* sym_subst(const sym_expr* e, const char* symbol,
                    const sym_expr* value) {
  clear_error();
  if (!check_handle(e) || !check_text(symbol, "symbol name") ||
      !check_handle(value))
    return nullptr;
  return guarded(
      [&] {
        symapprox::Substitution s;
        s.set(symbol, value->rep);
        return wrap(symapprox::substitute(e->rep, s));
      },
      static_cast<sym_expr*>(nullptr));
}

int sym_equal(const sym_expr* a, const sym_expr* b) {
  clear_error();
  if (!check_handle(a) || !check_handle(b)) return 0;
  return guarded([&] { return symapprox::equal(a->rep, b->rep) ? 1 : 0; }, 0);
}

int sym_is_zero(const sym_expr* e) {
  clear_error();
  if (!check_handle(e)) return -1;
  return guarded(
      [&] {
        symapprox::ZeroResult r = symapprox::is_zero(e->rep);
        switch (r.state) {
          case symapprox::ZeroState::Zero: return 1;
          case symapprox::ZeroState::NonZero: return 0;
          case symapprox::ZeroState::Unknown: break;
        }
        return -1;
      },
      -1);
}

int sym_eval(const sym_expr* e, const char* const* names, const double* values,
             size_t n, double* out) {
  clear_error();
  if (!check_handle(e)) return g_status;
  if (n > 0 && (!names || !values)) {
    record(ErrorCode::InvalidArgument, "binding arrays are null");
    return g_status;
  }
  if (!out) {
    record(ErrorCode::InvalidArgument, "null output pointer");
    return g_status;
  }
  int rc = guarded(
      [&] {
        std::map<std::string, double> bindings;
        for (size_t i = 0; i < n; ++i) {
          if (!names[i]) throw Error(ErrorCode::InvalidArgument, "null binding name");
          bindings[names[i]] = values[i];
        }
        *out = symapprox::eval_numeric(e->rep, bindings);
        return 0;
      },
      -1);
  return rc == 0 ? 0 : g_status;
}

int sym_run_problem(const char* document, const char* format,
                    const char* samples, const char* reference, int allow_held,
                    int max_passes, char** output, char** report) {
  clear_error();
  if (!check_text(document, "problem document")) return 2;
  if (!output) {
    record(ErrorCode::InvalidArgument, "null output pointer");
    return 2;
  }
  *output = nullptr;
  if (report) *report = nullptr;

  symapprox::RunOptions opt;
  opt.format = format ? format : "plain";
  if (samples) opt.samples = samples;
  if (reference) opt.reference = reference;
  opt.allow_held = allow_held != 0;
  if (max_passes > 0) opt.max_passes = max_passes;

  try {
    symapprox::RunResult result = symapprox::run_problem(document, opt);
    *output = copy_string(result.output);
    if (report) *report = copy_string(result.report);
    return 0;
  } catch (const Error& e) {
    record(e.code(), e.what());
    return symapprox::exit_code_for(e.code());
  } catch (const std::exception& e) {
    record(ErrorCode::InternalError, e.what());
    return 3;
  } catch (...) {
    record(ErrorCode::InternalError, "unknown failure");
    return 3;
  }
}

}  // extern "C"
