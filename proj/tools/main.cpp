// Command-line front end.  All engine work goes through the C API in
// symapprox.h; this file only handles arguments, file I/O and exit codes.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "symapprox.h"

int main(int argc, char** argv) {
  CLI::App app{"solve a problem file with the symbolic approximation engine"};

  std::string file;
  std::string format = "plain";
  std::string samples;
  std::string reference;
  std::string report_path;
  bool allow_held = false;
  int max_passes = 0;

  app.add_option("file", file, "problem file to solve")->required();
  app.add_option("--format", format, "output format: plain, latex or csv");
  app.add_option("--samples", samples,
                 "evaluation grid lo:hi:n for csv output and references");
  app.add_option("--reference", reference,
                 "numeric reference column: rk4 or fd (needs --samples)");
  app.add_option("--report", report_path, "write the solve report to this file");
  app.add_flag("--allow-held", allow_held,
               "print unresolved integral forms instead of failing");
  app.add_option("--max-passes", max_passes,
                 "budget for repeated resolution passes (default 1000)");
  app.set_version_flag("--version", sym_version());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ifstream in(file);
  if (!in) {
    std::fprintf(stderr, "error: cannot open problem file '%s'\n", file.c_str());
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();

  char* output = nullptr;
  char* report = nullptr;
  int status = sym_run_problem(
      text.str().c_str(), format.c_str(), samples.empty() ? nullptr : samples.c_str(),
      reference.empty() ? nullptr : reference.c_str(), allow_held ? 1 : 0,
      max_passes, &output, &report);

  if (status != 0) {
    std::fprintf(stderr, "error: %s\n", sym_last_message());
    sym_free_string(output);
    sym_free_string(report);
    return status;
  }

  std::fputs(output ? output : "", stdout);

  if (!report_path.empty()) {
    std::ofstream rep(report_path);
    if (!rep) {
      std::fprintf(stderr, "error: cannot write report file '%s'\n",
                   report_path.c_str());
      sym_free_string(output);
      sym_free_string(report);
      return 2;
    }
    rep << (report ? report : "");
  }

  sym_free_string(output);
  sym_free_string(report);
  return 0;
}
