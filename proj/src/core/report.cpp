#include "core/report.hpp"

#include <algorithm>
#include <sstream>

#include "core/render.hpp"

namespace symapprox {

void SolveReport::note_generic(const Expr& e) {
  for (const auto& g : genericity)
    if (equal(g, e)) return;
  genericity.push_back(e);
}

void SolveReport::note_unresolved(const Expr& e) {
  for (const auto& u : unresolved_integrals)
    if (equal(u, e)) return;
  unresolved_integrals.push_back(e);
}

void SolveReport::warn(const std::string& msg) {
  if (std::find(warnings.begin(), warnings.end(), msg) != warnings.end()) return;
  warnings.push_back(msg);
}

void SolveReport::merge(const SolveReport& other) {
  for (const auto& g : other.genericity) note_generic(g);
  for (const auto& u : other.unresolved_integrals) note_unresolved(u);
  for (const auto& w : other.warnings) warn(w);
  iterations_run = std::max(iterations_run, other.iterations_run);
  residual_samples.insert(residual_samples.end(), other.residual_samples.begin(),
                          other.residual_samples.end());
}

std::string SolveReport::to_text() const {
  std::ostringstream os;
  os << "iterations: " << iterations_run << "\n";
  os << "genericity assumptions (each != 0): " << genericity.size() << "\n";
  for (const auto& g : genericity) os << "  " << to_plain(g) << "\n";
  os << "unresolved integrals: " << unresolved_integrals.size() << "\n";
  for (const auto& u : unresolved_integrals) os << "  " << to_plain(u) << "\n";
  os << "warnings: " << warnings.size() << "\n";
  for (const auto& w : warnings) os << "  " << w << "\n";
  if (!residual_samples.empty()) {
    os << "residual samples:\n";
    for (const auto& [x, r] : residual_samples)
      os << "  " << format_double(x) << " -> " << format_double(r) << "\n";
  }
  return os.str();
}

}  // namespace symapprox
