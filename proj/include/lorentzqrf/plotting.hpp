#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lorentzqrf/phenomena.hpp"

namespace lqrf::phenomena {

struct Window {
  double t_min, t_max, x_min, x_max;
};

// One layer per labelled state, sampled on the PlotSpec raster.
PlotGrid sample_states(const std::string& name, const PlotSpec& plot, Window w,
                       const std::vector<std::pair<std::string, rqstate::RapidityState>>& states);

}  // namespace lqrf::phenomena
