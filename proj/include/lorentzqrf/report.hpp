#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lqrf {

struct BranchResult {
  std::string label;
  double rapidity = 0.0;
  std::string quantity;
  double predicted = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool relative = true;   // tolerance scales with |predicted|
  bool pass = false;
  std::string path;       // "exact-event" or "wave-packet" etc.
};

// pass iff |measured - predicted| <= tolerance * (relative ? max(|predicted|, tiny) : 1)
BranchResult make_check(std::string label, double rapidity, std::string quantity, double predicted, double measured,
                        double tolerance, bool relative, std::string path);

// Intensity layers on a uniform (t, x) raster, row-major in t.
struct PlotLayer {
  std::string label;
  std::vector<double> values;
};

struct PlotLine {
  std::string label;
  double x0, t0, x1, t1;
};

struct PlotGrid {
  std::string name;
  std::string quantity;
  double t_min = 0.0, t_max = 1.0, x_min = 0.0, x_max = 1.0;
  std::size_t nt = 0, nx = 0;
  std::vector<PlotLayer> layers;
  std::vector<PlotLine> overlays;
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<BranchResult> branches;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<PlotGrid> grids;
  std::vector<Table> tables;

  bool passed() const;
  double metric(const std::string& name) const;
};

}  // namespace lqrf
