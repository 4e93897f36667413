#pragma once

#include <string>
#include <vector>

#include "lorentzqrf/report.hpp"

namespace lqrf::svg {

struct RenderOptions {
  double width = 480.0;
  double height = 480.0;
  double cutoff = 0.02;  // cells below this fraction of the layer maximum are not drawn
};

// SVG 1.1 heatmap of all layers in one panel, one colour per layer, x horizontal and t vertical.
// A grid without layers renders as a blank panel with axes.
std::string render(const PlotGrid& grid, const RenderOptions& opts = {});

std::string layer_colour(std::size_t index);

}  // namespace lqrf::svg
