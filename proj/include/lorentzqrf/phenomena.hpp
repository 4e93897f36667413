#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "lorentzqrf/measure.hpp"
#include "lorentzqrf/report.hpp"
#include "lorentzqrf/rqstate.hpp"

namespace lqrf::phenomena {

using rqstate::RapidityGrid;

struct GridParams {
  double half_width = 10.0;
  std::size_t count = 4096;
  RapidityGrid make() const { return RapidityGrid::symmetric(half_width, count); }
};

// Raster requested for plots; nt == 0 disables plot grids.
struct PlotSpec {
  std::size_t nt = 0;
  std::size_t nx = 0;
  std::string quantity = "abs2";  // "abs2" or "re"
  static constexpr std::size_t kMaxResolution = 2048;
  void validate() const;
};

inline const double kLn2 = std::numbers::ln2;

struct DilationScenario {
  enum class Mode { exact_event, narrow_gaussian };
  double t1 = 0.0;
  double t2 = 1.0;
  double x0 = 0.0;
  double omega1 = 0.0;
  double omega2 = kLn2;
  Mode mode = Mode::exact_event;
  double sigma = 0.02;
  double mass = 1.0;
  GridParams grid;
};

struct ContractionScenario {
  double x1 = 0.0;
  double x2 = 1.0;
  double t_b1 = 0.0;
  double t_b2 = 0.6;
  double t_d1 = 0.0;
  double t_d2 = 0.8;
  double v_b = 0.6;
  double v_d = 0.8;
};

struct WidthScenario {
  double sigma = 1.0;
  std::vector<double> omegas{0.0, kLn2};
  double mass = 1.0;
  GridParams grid;
};

struct InterferenceScenario {
  double x0 = 0.0;
  double t0 = 0.0;
  double sigma_x = 1.0;
  double sigma_t = 1.0;
  double mass = 1.0;
  double omega1 = 0.02;
  double omega2 = -0.02;
  double t_probe = 5.0;
  double x_probe = 1.0;
  int sign = +1;
  double frame_width = 0.0;  // rapidity width of the frame branches; 0 means sharp
};

ScenarioReport run_time_dilation(const DilationScenario& s, const PlotSpec& plot = {});
ScenarioReport run_length_contraction(const ContractionScenario& s);
ScenarioReport run_width_contraction(const WidthScenario& s, const PlotSpec& plot = {});
measure::ProbabilityReport run_nonrel_interference(const InterferenceScenario& s);

// Closed-form F(nu, k) = int dt dx e^{i nu t - i k x} phi_omega(t, x) for the expanded boost.
Complex nonrel_fourier(const InterferenceScenario& s, double omega, double nu, double k);

}  // namespace lqrf::phenomena
