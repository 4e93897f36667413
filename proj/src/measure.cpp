#include "lorentzqrf/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace lqrf::measure {

namespace {

constexpr double kNormTolerance = 1e-8;

RapidityState checked_normalize(const RapidityState& s, const char* what) {
  if (s.improper()) throw std::domain_error(std::string(what) + " is not normalizable");
  return rqstate::normalize(s);
}

}  // namespace

RegionPovm::RegionPovm(SpacetimeFunction h, const RapidityGrid& grid, relkin::Mass m, std::string label)
    : h_(std::move(h)),
      h_n_(checked_normalize(rqstate::from_spacetime_function(*h_, grid, m), "region function")),
      label_(std::move(label)) {}

RegionPovm::RegionPovm(const RapidityState& h_state, std::string label)
    : h_n_(checked_normalize(h_state, "region state")), label_(std::move(label)) {}

double ProbabilityReport::component(const std::string& name) const {
  for (const auto& [k, v] : components)
    if (k == name) return v;
  throw std::out_of_range("no probability component named " + name);
}

double momentum_density(const RapidityState& s, relkin::Rapidity theta) {
  if (std::abs(rqstate::kg_norm(s) - 1.0) > kNormTolerance)
    throw std::domain_error("momentum density requires a normalized state");
  const auto& g = s.grid();
  const double u = (theta.value() - g.theta_min()) / g.step();
  if (u < 0.0 || u > static_cast<double>(g.size() - 1)) return 0.0;
  const auto j = static_cast<std::size_t>(std::floor(u));
  if (j + 1 >= g.size()) return 0.5 * std::norm(s.amplitudes()[g.size() - 1]);
  const double f = u - static_cast<double>(j);
  const double a = std::norm(s.amplitudes()[j]), b = std::norm(s.amplitudes()[j + 1]);
  return 0.5 * ((1.0 - f) * a + f * b);
}

std::vector<double> momentum_density_grid(const RapidityState& s) {
  if (std::abs(rqstate::kg_norm(s) - 1.0) > kNormTolerance)
    throw std::domain_error("momentum density requires a normalized state");
  std::vector<double> d(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) d[j] = 0.5 * std::norm(s.amplitudes()[j]);
  return d;
}

ProbabilityReport region_probability(const RapidityState& f, const RegionPovm& h) {
  const RapidityState fn = checked_normalize(f, "state");
  ProbabilityReport r;
  const double p = std::norm(rqstate::kg_inner(h.normalized(), fn));
  r.value = p;
  r.components.emplace_back(h.label(), p);
  for (const auto& w : fn.warnings()) r.warnings.push_back("state: " + w);
  for (const auto& w : h.normalized().warnings()) r.warnings.push_back("region: " + w);
  return r;
}

ProbabilityReport complement_probability(const RapidityState& f, const RegionPovm& h) {
  ProbabilityReport r = region_probability(f, h);
  const double p = r.value;
  r.value = 1.0 - p;
  r.components = {{"not " + h.label(), r.value}};
  return r;
}

std::vector<ProbabilityReport> outcome_probabilities(const RapidityState& f, const ObservationTest& test) {
  std::vector<ProbabilityReport> out;
  double total = 0.0;
  for (const auto& region : test.regions) {
    out.push_back(region_probability(f, region));
    total += out.back().value;
  }
  ProbabilityReport rest;
  rest.value = 1.0 - total;
  rest.components = {{"complement", rest.value}};
  if (rest.value < -1e-10)
    rest.warnings.push_back("regions are not mutually orthogonal; complement element is not positive");
  out.push_back(std::move(rest));
  return out;
}

}  // namespace lqrf::measure
