#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lorentzqrf/relkin.hpp"
#include "lorentzqrf/spacetime_function.hpp"

namespace lqrf::rqstate {

using relkin::Mass;
using relkin::Rapidity;
using relkin::SpacetimePoint;

class RapidityGrid {
 public:
  RapidityGrid(double theta_min, double step, std::size_t count);

  // theta_min = -h (N-1)/2, h = 2 half_width / (N-1)
  static RapidityGrid symmetric(double half_width, std::size_t count);
  static RapidityGrid default_grid() { return symmetric(10.0, 4096); }

  double theta_min() const noexcept { return theta_min_; }
  double theta_max() const noexcept { return theta_min_ + step_ * static_cast<double>(count_ - 1); }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return count_; }
  double theta(std::size_t j) const noexcept { return theta_min_ + step_ * static_cast<double>(j); }
  // Trapezoid weight in d(theta).
  double weight(std::size_t j) const noexcept { return (j == 0 || j + 1 == count_) ? 0.5 * step_ : step_; }

  friend bool operator==(const RapidityGrid&, const RapidityGrid&) = default;

 private:
  double theta_min_;
  double step_;
  std::size_t count_;
};

// Per-node energy, momentum and invariant-measure weight w_j / 2.
struct Kinematics {
  std::vector<double> e;
  std::vector<double> p;
  std::vector<double> half_weight;
};

class RapidityState {
 public:
  RapidityState(RapidityGrid grid, Mass mass, std::vector<Complex> amplitudes, bool improper = false);

  const RapidityGrid& grid() const noexcept { return grid_; }
  Mass mass() const noexcept { return mass_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t j) const { return amplitudes_.at(j); }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  bool improper() const noexcept { return improper_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  const Kinematics& kinematics() const noexcept { return *kin_; }

  RapidityState with_amplitudes(std::vector<Complex> amplitudes) const;
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }
  void set_improper(bool v) noexcept { improper_ = v; }

  bool compatible(const RapidityState& other) const noexcept {
    return grid_ == other.grid_ && mass_ == other.mass_;
  }

 private:
  RapidityGrid grid_;
  Mass mass_;
  std::vector<Complex> amplitudes_;
  bool improper_ = false;
  std::vector<std::string> warnings_;
  std::shared_ptr<const Kinematics> kin_;
};

RapidityState operator+(const RapidityState& a, const RapidityState& b);
RapidityState operator*(Complex c, const RapidityState& s);

struct PropagatorQuery {
  SpacetimePoint from;
  SpacetimePoint to;
  Mass mass{1.0};
};

struct PropagatorOptions {
  double taper_width = 1.0;       // rapidity length of the smooth cutoff ramp
  double max_phase_step = 2.5;    // window ends where |d(phase)/d(theta)| h exceeds this
};

struct PropagatorValue {
  Complex value;
  bool cutoff_dependent = false;  // window reached the grid edge (coincident or lightlike)
  bool resolved = true;           // false if the grid cannot resolve the phase near the saddle
  double window_lo = 0.0;
  double window_hi = 0.0;
};

struct BoostReport {
  RapidityState state;
  bool exact_shift = false;
  double interpolation_residual = 0.0;
  bool truncated = false;
};

RapidityState from_spacetime_function(const SpacetimeFunction& f, const RapidityGrid& grid, Mass m);

// Amplitudes exp(-(theta - theta0)^2 / (4 width^2)) e^{i(E t0 - p x0)}.
RapidityState rapidity_gaussian(const RapidityGrid& grid, Mass m, double theta0, double width,
                                SpacetimePoint center = {});

Complex wavefunction(const RapidityState& s, SpacetimePoint pt);
// i d/dt psi evaluated spectrally.
Complex energy_wavefunction(const RapidityState& s, SpacetimePoint pt);
// Values on ts x xs, row-major in t.
std::vector<Complex> wavefunction_grid(const RapidityState& s, std::span<const double> ts,
                                       std::span<const double> xs);
// Profile phi of the equal-time slice delta(t' - t) phi(x) that generates s.
Complex equal_time_profile(const RapidityState& s, double t, double x);

PropagatorValue propagator(const PropagatorQuery& q, const RapidityGrid& grid,
                           const PropagatorOptions& opts = {});

Complex kg_inner(const RapidityState& a, const RapidityState& b);
double kg_norm(const RapidityState& s);
RapidityState normalize(const RapidityState& s);

RapidityState evolve(const RapidityState& s, double dt);
RapidityState translate(const RapidityState& s, double dt, double dx);

RapidityState boost_state(const RapidityState& s, Rapidity alpha);
BoostReport boost_state_detailed(const RapidityState& s, Rapidity alpha);

double kg_equation_residual(const RapidityState& s, std::span<const SpacetimePoint> test_points);

}  // namespace lqrf::rqstate
