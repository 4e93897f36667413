#pragma once

#include <vector>

#include "lorentzqrf/phenomena.hpp"

namespace lqrf::scenarios {

using phenomena::GridParams;
using phenomena::PlotSpec;

struct BoostSuperposition {
  double omega1 = 0.0;
  double omega2 = phenomena::kLn2;
  double c1 = 1.0;
  double c2 = 1.0;
  double t0 = 1.0;
  double x0 = 0.5;
  double sigma = 0.1;
  double mass = 1.0;
  GridParams grid;
};

struct SuperposedSlice {
  double t_b = 0.5;
  double t_a = 0.0;
  double omega1 = 0.0;
  double omega2 = phenomena::kLn2;
  double m_a = 1.0;
  double m_b = 1.0;
  double m_c = 1.0;
  double tooth = 0.05;       // width of each comb tooth in the slice profile
  std::size_t teeth = 5;
  double spacing = 1.0;
  GridParams grid;
};

struct CoordinateTransform {
  std::vector<double> velocities{0.6, 0.8};
  std::vector<double> event_t{1.0, 0.0};
  std::vector<double> event_x{0.0, 1.0};
};

struct PropagatorTable {
  double mass = 1.0;
  std::vector<double> dts{-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 5.0};
  std::vector<double> dxs{0.0, 0.5, 1.0, 2.0, 3.0};
  GridParams grid;
};

ScenarioReport run_superposition_of_boosts(const BoostSuperposition& s, const PlotSpec& plot = {});
ScenarioReport run_superposed_slice(const SuperposedSlice& s, const PlotSpec& plot = {});
ScenarioReport run_coordinate_transform(const CoordinateTransform& s);
ScenarioReport run_propagator_table(const PropagatorTable& s);

// Closed forms of the positive-energy propagator: -(i pi/2) H0^(2), (i pi/2) H0^(1), K0.
Complex propagator_closed_form(double dt, double dx, double m);

}  // namespace lqrf::scenarios
