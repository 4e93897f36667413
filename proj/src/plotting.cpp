#include "lorentzqrf/plotting.hpp"

namespace lqrf::phenomena {

PlotGrid sample_states(const std::string& name, const PlotSpec& plot, Window w,
                       const std::vector<std::pair<std::string, rqstate::RapidityState>>& states) {
  plot.validate();
  PlotGrid g{name, plot.quantity, w.t_min, w.t_max, w.x_min, w.x_max, plot.nt, plot.nx, {}, {}};
  std::vector<double> ts(plot.nt), xs(plot.nx);
  for (std::size_t i = 0; i < plot.nt; ++i)
    ts[i] = plot.nt == 1 ? w.t_min : w.t_min + (w.t_max - w.t_min) * static_cast<double>(i) / static_cast<double>(plot.nt - 1);
  for (std::size_t j = 0; j < plot.nx; ++j)
    xs[j] = plot.nx == 1 ? w.x_min : w.x_min + (w.x_max - w.x_min) * static_cast<double>(j) / static_cast<double>(plot.nx - 1);
  for (const auto& [label, s] : states) {
    const auto psi = rqstate::wavefunction_grid(s, ts, xs);
    PlotLayer layer{label, std::vector<double>(psi.size())};
    for (std::size_t k = 0; k < psi.size(); ++k)
      layer.values[k] = plot.quantity == "re" ? psi[k].real() : std::norm(psi[k]);
    g.layers.push_back(std::move(layer));
  }
  return g;
}

}  // namespace lqrf::phenomena
