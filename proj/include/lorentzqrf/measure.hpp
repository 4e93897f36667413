#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lorentzqrf/rqstate.hpp"

namespace lqrf::measure {

using rqstate::RapidityGrid;
using rqstate::RapidityState;

class RegionPovm {
 public:
  RegionPovm(SpacetimeFunction h, const RapidityGrid& grid, relkin::Mass m, std::string label = "h");
  // Region given directly by a state; h stays empty.
  explicit RegionPovm(const RapidityState& h_state, std::string label = "h");

  const std::optional<SpacetimeFunction>& function() const noexcept { return h_; }
  const RapidityState& normalized() const noexcept { return h_n_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::optional<SpacetimeFunction> h_;
  RapidityState h_n_;
  std::string label_;
};

struct ProbabilityReport {
  double value = 0.0;
  std::vector<std::pair<std::string, double>> components;
  std::vector<std::string> warnings;

  double component(const std::string& name) const;
};

// |f~(theta)|^2 / 2 per unit theta; s must be normalized.
double momentum_density(const RapidityState& s, relkin::Rapidity theta);
std::vector<double> momentum_density_grid(const RapidityState& s);

ProbabilityReport region_probability(const RapidityState& f, const RegionPovm& h);
ProbabilityReport complement_probability(const RapidityState& f, const RegionPovm& h);

// A finite test {P_1, ..., P_n, I - sum P_k}. Outcome k < n is region k; outcome n is the complement.
struct ObservationTest {
  std::vector<RegionPovm> regions;
};

std::vector<ProbabilityReport> outcome_probabilities(const RapidityState& f, const ObservationTest& test);

}  // namespace lqrf::measure
