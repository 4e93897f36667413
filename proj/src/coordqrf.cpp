#include "lorentzqrf/coordqrf.hpp"

#include <cmath>
#include <stdexcept>

namespace lqrf::coordqrf {

VelocityBranch::VelocityBranch(double v, Complex amplitude) : v_(v), amplitude_(amplitude) {
  if (!std::isfinite(v) || !(std::abs(v) < 1.0)) throw std::domain_error("branch velocity must satisfy |v| < 1");
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
    throw std::domain_error("branch amplitude must be finite");
}

void JointCoordinateState::validate() const {
  if (lab.empty()) throw std::invalid_argument("lab needs at least one velocity branch");
  if (events.size() != lab.size()) throw std::invalid_argument("event lists must be given per branch");
  for (const auto& e : events)
    if (e.size() != events.front().size()) throw std::invalid_argument("event-list length must be uniform across branches");
}

std::vector<VelocityBranch> equal_weight_lab(const std::vector<double>& velocities) {
  std::vector<VelocityBranch> lab;
  const double c = 1.0 / std::sqrt(static_cast<double>(velocities.size()));
  for (double v : velocities) lab.emplace_back(v, c);
  return lab;
}

JointCoordinateState shared_events(std::vector<VelocityBranch> lab, std::string lab_owner, std::string observer,
                                   const std::vector<EventCoordinate>& events) {
  JointCoordinateState s{std::move(lab), std::move(lab_owner), std::move(observer), {}};
  s.events.assign(s.lab.size(), events);
  s.validate();
  return s;
}

JointCoordinateState parity_swap(const JointCoordinateState& s, std::string_view from, std::string_view to) {
  s.validate();
  if (s.observer != from || s.lab_owner != to)
    throw std::invalid_argument("parity_swap expects the lab of '" + std::string(to) + "' described by '" +
                                std::string(from) + "'");
  JointCoordinateState out = s;
  for (auto& b : out.lab) b = VelocityBranch(-b.v(), b.amplitude());
  out.lab_owner = std::string(from);
  out.observer = std::string(to);
  return out;
}

JointCoordinateState controlled_boost(const JointCoordinateState& s) {
  s.validate();
  JointCoordinateState out = s;
  for (std::size_t i = 0; i < s.lab.size(); ++i) {
    const auto m = relkin::boost_matrix(-relkin::Rapidity::from_velocity(s.lab[i].v()));
    for (auto& e : out.events[i]) {
      const auto p = m.apply(relkin::SpacetimePoint{e.t, e.x});
      e = {p.t, p.x};
    }
  }
  return out;
}

JointCoordinateState transform_frame(const JointCoordinateState& s, std::string_view from, std::string_view to) {
  return parity_swap(controlled_boost(s), from, to);
}

std::vector<relkin::Interval> distance_expectation(const JointCoordinateState& s, std::size_t i, std::size_t j) {
  s.validate();
  std::vector<relkin::Interval> out;
  for (const auto& ev : s.events) {
    const auto& a = ev.at(i);
    const auto& b = ev.at(j);
    out.push_back(relkin::invariant_interval({a.t, a.x}, {b.t, b.x}));
  }
  return out;
}

double velocity_of_momentum(double p, relkin::Mass m) {
  const double r = p / m.value();
  return r / std::sqrt(1.0 + r * r);
}

}  // namespace lqrf::coordqrf
