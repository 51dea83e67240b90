// Drives the installed command-line binary end to end via popen.  The harness
// passes the binary and the problem corpus through SYMAPPROX_CLI and
// SYMAPPROX_PROBLEMS.
#include "doctest.h"
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/parse.hpp"
#include "core/polyfrac.hpp"

using namespace symapprox;
namespace fs = std::filesystem;

namespace {

struct RunOut {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("SYMAPPROX_CLI");
  REQUIRE(p != nullptr);
  return p;
}

std::string problems_dir() {
  const char* p = std::getenv("SYMAPPROX_PROBLEMS");
  REQUIRE(p != nullptr);
  return p;
}

RunOut run_cmd(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunOut r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// stdout only; stderr dropped
RunOut run_cli(const std::string& args) {
  return run_cmd(quoted(cli_path()) + " " + args + " 2>/dev/null");
}

// stdout and stderr interleaved, for error-message checks
RunOut run_cli_all(const std::string& args) {
  return run_cmd(quoted(cli_path()) + " " + args + " 2>&1");
}

std::string problem(const std::string& name) {
  return quoted((fs::path(problems_dir()) / name).string());
}

// a scratch problem file next to the test's working directory
fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::current_path() / name;
  std::ofstream f(p);
  f << text;
  f.close();
  return p;
}

std::string strip_final_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("version flag") {
  RunOut r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(!r.out.empty());
}

TEST_CASE("expansion output matches the closed form and is reproducible") {
  RunOut r1 = run_cli(problem("perturb_bernoulli.txt"));
  REQUIRE(r1.code == 0);
  Expr got = parse(strip_final_newline(r1.out));
  Expr want = parse("exp(-k*t) + (e/k)*(exp(-2*k*t) - exp(-k*t))");
  CHECK(definitely_equal(got, want));

  RunOut r2 = run_cli(problem("perturb_bernoulli.txt"));
  CHECK(r2.code == 0);
  CHECK(r2.out == r1.out);  // byte-identical across runs
}

TEST_CASE("scalar golden outputs") {
  RunOut rosen = run_cli(problem("newton_rosenbrock.txt"));
  CHECK(rosen.code == 0);
  CHECK(rosen.out == "x = 1, y = 1\n");

  RunOut baby = run_cli(problem("fixedpoint_babylonian.txt"));
  CHECK(baby.code == 0);
  CHECK(baby.out == "577/408\n");

  RunOut affine = run_cli(problem("steffensen_affine.txt"));
  CHECK(affine.code == 0);
  CHECK(affine.out == "2\n");
}

TEST_CASE("resummation output matches the exact flow") {
  RunOut r = run_cli(problem("pade_bernoulli.txt"));
  REQUIRE(r.code == 0);
  Expr got = parse(strip_final_newline(r.out));
  CHECK(definitely_equal(got, parse("k/(-e + (e + k)*exp(k*t))")));
}

TEST_CASE("every shipped problem runs clean and deterministically") {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(problems_dir()))
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  REQUIRE(!files.empty());
  for (const auto& f : files) {
    CAPTURE(f.string());
    RunOut a = run_cli(quoted(f.string()));
    CHECK(a.code == 0);
    CHECK(!a.out.empty());
    RunOut b = run_cli(quoted(f.string()));
    CHECK(b.code == a.code);
    CHECK(b.out == a.out);
  }
}

TEST_CASE("csv sampling with and without a reference column") {
  RunOut plain = run_cli(problem("galerkin_poisson.txt") +
                         " --format csv --samples 0:1:5");
  REQUIRE(plain.code == 0);
  REQUIRE(plain.out.rfind("x,approx\n", 0) == 0);
  CHECK(std::count(plain.out.begin(), plain.out.end(), '\n') == 6);

  RunOut with_ref = run_cli(problem("galerkin_poisson.txt") +
                            " --format csv --samples 0:1:5 --reference fd");
  REQUIRE(with_ref.code == 0);
  REQUIRE(with_ref.out.rfind("x,approx,reference\n", 0) == 0);
  CHECK(std::count(with_ref.out.begin(), with_ref.out.end(), '\n') == 6);
  // every row has exactly two commas
  size_t pos = with_ref.out.find('\n') + 1;
  while (pos < with_ref.out.size()) {
    size_t end = with_ref.out.find('\n', pos);
    std::string row = with_ref.out.substr(pos, end - pos);
    CHECK(std::count(row.begin(), row.end(), ',') == 2);
    pos = end + 1;
  }
}

TEST_CASE("latex output format") {
  RunOut r = run_cli(problem("perturb_bernoulli.txt") + " --format latex");
  CHECK(r.code == 0);
  CHECK(r.out.find("\\frac") != std::string::npos);
}

TEST_CASE("report flag writes the side record") {
  fs::path report = fs::current_path() / "cli_tmp_report.txt";
  std::error_code ec;
  fs::remove(report, ec);
  RunOut r = run_cli(problem("perturb_bernoulli.txt") + " --report " +
                     quoted(report.string()));
  CHECK(r.code == 0);
  REQUIRE(fs::exists(report));
  std::ifstream f(report);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  CHECK(!text.empty());
  fs::remove(report, ec);
}

TEST_CASE("validation failures exit with code 2 and name the problem") {
  fs::path bad = write_temp("cli_tmp_empty_equation.txt",
                            "unknown: x\n"
                            "equation:\n"
                            "method: fixedpoint\n"
                            "x0: 1\n");
  RunOut r = run_cli_all(quoted(bad.string()));
  CHECK(r.code == 2);
  CHECK(r.out.find("equation") != std::string::npos);
  CHECK(r.out.find("line 2") != std::string::npos);
  std::error_code ec;
  fs::remove(bad, ec);

  RunOut missing = run_cli_all(quoted("cli_tmp_does_not_exist.txt"));
  CHECK(missing.code == 2);

  RunOut badflag = run_cli_all(problem("perturb_bernoulli.txt") +
                               " --definitely-not-a-flag");
  CHECK(badflag.code == 2);

  RunOut badsamples = run_cli_all(problem("galerkin_poisson.txt") +
                                  " --format csv --samples nope");
  CHECK(badsamples.code == 2);

  RunOut csv_no_samples = run_cli_all(problem("galerkin_poisson.txt") +
                                      " --format csv");
  CHECK(csv_no_samples.code == 2);
}

TEST_CASE("held integrals gate the exit status unless explicitly allowed") {
  fs::path held = write_temp("cli_tmp_held.txt",
                             "unknown: u(t)\n"
                             "equation: D(u(t),t) + u(t) = log(1 + t)\n"
                             "initial: u(0) = 0\n"
                             "method: fixedpoint\n"
                             "param: 1\n"
                             "iterations: 1\n");
  RunOut strict = run_cli_all(quoted(held.string()));
  CHECK(strict.code == 4);

  RunOut loose = run_cli(quoted(held.string()) + " --allow-held");
  CHECK(loose.code == 0);
  CHECK(loose.out.find("Int(") != std::string::npos);
  std::error_code ec;
  fs::remove(held, ec);
}
