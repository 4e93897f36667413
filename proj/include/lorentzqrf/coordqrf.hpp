#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "lorentzqrf/relkin.hpp"

namespace lqrf::coordqrf {

using Complex = std::complex<double>;

struct EventCoordinate {
  double t = 0.0;
  double x = 0.0;
  friend bool operator==(const EventCoordinate&, const EventCoordinate&) = default;
};

class VelocityBranch {
 public:
  VelocityBranch(double v, Complex amplitude);
  double v() const noexcept { return v_; }
  Complex amplitude() const noexcept { return amplitude_; }

 private:
  double v_;
  Complex amplitude_;
};

// Lab of `lab_owner` in branches of velocity, as described by `observer`.
struct JointCoordinateState {
  std::vector<VelocityBranch> lab;
  std::string lab_owner;
  std::string observer;
  std::vector<std::vector<EventCoordinate>> events;  // [branch][event]

  void validate() const;
};

// Equal amplitudes 1/sqrt(n).
std::vector<VelocityBranch> equal_weight_lab(const std::vector<double>& velocities);
// Every branch carries the same event list.
JointCoordinateState shared_events(std::vector<VelocityBranch> lab, std::string lab_owner, std::string observer,
                                   const std::vector<EventCoordinate>& events);

JointCoordinateState parity_swap(const JointCoordinateState& s, std::string_view from, std::string_view to);
JointCoordinateState controlled_boost(const JointCoordinateState& s);
JointCoordinateState transform_frame(const JointCoordinateState& s, std::string_view from, std::string_view to);
std::vector<relkin::Interval> distance_expectation(const JointCoordinateState& s, std::size_t i, std::size_t j);

// v = (p/m) / sqrt(1 + p^2/m^2)
double velocity_of_momentum(double p, relkin::Mass m);

}  // namespace lqrf::coordqrf
