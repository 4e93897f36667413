#include "lorentzqrf/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lqrf {

BranchResult make_check(std::string label, double rapidity, std::string quantity, double predicted, double measured,
                        double tolerance, bool relative, std::string path) {
  BranchResult r{std::move(label), rapidity, std::move(quantity), predicted, measured, tolerance, relative, false,
                 std::move(path)};
  const double scale = relative ? std::max(std::abs(predicted), 1e-300) : 1.0;
  r.pass = std::isfinite(measured) && std::abs(measured - predicted) <= tolerance * scale;
  return r;
}

bool ScenarioReport::passed() const {
  return std::all_of(branches.begin(), branches.end(), [](const BranchResult& b) { return b.pass; });
}

double ScenarioReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw std::out_of_range("no metric named " + name);
}

}  // namespace lqrf
