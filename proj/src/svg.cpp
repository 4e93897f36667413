#include "lorentzqrf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lorentzqrf/errors.hpp"

namespace lqrf::svg {

namespace {

constexpr std::size_t kMaxResolution = 2048;
constexpr double kMargin = 48.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string layer_colour(std::size_t index) {
  static const char* palette[] = {"#d4a017", "#1f5fbf", "#c0392b", "#27ae60", "#8e44ad", "#16a085", "#e67e22", "#7f8c8d"};
  return palette[index % (sizeof palette / sizeof *palette)];
}

std::string render(const PlotGrid& g, const RenderOptions& opts) {
  if (g.nt > kMaxResolution || g.nx > kMaxResolution) throw ConfigError("plot resolution exceeds 2048 x 2048 per panel");
  for (const auto& l : g.layers)
    if (l.values.size() != g.nt * g.nx) throw std::invalid_argument("layer size does not match the plot raster");
  if (!(g.t_max > g.t_min) || !(g.x_max > g.x_min)) throw std::invalid_argument("plot window is empty");

  const double pw = opts.width, ph = opts.height;
  const double total_w = pw + 2 * kMargin, total_h = ph + 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - g.x_min) / (g.x_max - g.x_min) * pw; };
  auto py = [&](double t) { return kMargin + ph - (t - g.t_min) / (g.t_max - g.t_min) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(total_w) + "\" height=\"" +
       num(total_h) + "\" viewBox=\"0 0 " + num(total_w) + " " + num(total_h) + "\">\n";
  s += "<title>" + escape(g.name) + " (" + escape(g.quantity) + ")</title>\n";
  s += "<rect x=\"0.000\" y=\"0.000\" width=\"" + num(total_w) + "\" height=\"" + num(total_h) + "\" fill=\"#ffffff\"/>\n";

  if (g.nt > 0 && g.nx > 0) {
    const double cw = pw / static_cast<double>(g.nx), ch = ph / static_cast<double>(g.nt);
    for (std::size_t li = 0; li < g.layers.size(); ++li) {
      const auto& l = g.layers[li];
      double vmax = 0.0;
      for (double v : l.values) vmax = std::max(vmax, std::abs(v));
      s += "<g fill=\"" + layer_colour(li) + "\" stroke=\"none\">\n";
      if (vmax > 0.0)
        for (std::size_t i = 0; i < g.nt; ++i)
          for (std::size_t j = 0; j < g.nx; ++j) {
            const double a = std::abs(l.values[i * g.nx + j]) / vmax;
            if (a < opts.cutoff) continue;
            const double x = kMargin + cw * static_cast<double>(j);
            const double y = kMargin + ph - ch * static_cast<double>(i + 1);
            s += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) + "\" height=\"" + num(ch) +
                 "\" fill-opacity=\"" + num(std::sqrt(a)) + "\"/>\n";
          }
      s += "</g>\n";
    }
  }

  for (std::size_t k = 0; k < g.overlays.size(); ++k) {
    const auto& o = g.overlays[k];
    s += "<line x1=\"" + num(px(o.x0)) + "\" y1=\"" + num(py(o.t0)) + "\" x2=\"" + num(px(o.x1)) + "\" y2=\"" +
         num(py(o.t1)) + "\" stroke=\"" + layer_colour(k) + "\" stroke-dasharray=\"4 3\" stroke-width=\"1.000\"/>\n";
  }

  // Axes and labels.
  s += "<g stroke=\"#000000\" stroke-width=\"1.000\" fill=\"none\">\n";
  s += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) + "\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = kMargin + pw * k / 4.0, fy = kMargin + ph * k / 4.0;
    s += "<line x1=\"" + num(fx) + "\" y1=\"" + num(kMargin + ph) + "\" x2=\"" + num(fx) + "\" y2=\"" + num(kMargin + ph + 5) + "\"/>\n";
    s += "<line x1=\"" + num(kMargin - 5) + "\" y1=\"" + num(fy) + "\" x2=\"" + num(kMargin) + "\" y2=\"" + num(fy) + "\"/>\n";
  }
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#000000\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = g.x_min + (g.x_max - g.x_min) * k / 4.0;
    const double tv = g.t_min + (g.t_max - g.t_min) * k / 4.0;
    s += "<text x=\"" + num(kMargin + pw * k / 4.0) + "\" y=\"" + num(kMargin + ph + 18) + "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
    s += "<text x=\"" + num(kMargin - 8) + "\" y=\"" + num(kMargin + ph - ph * k / 4.0 + 4) + "\" text-anchor=\"end\">" + num(tv) + "</text>\n";
  }
  s += "<text x=\"" + num(kMargin + pw / 2) + "\" y=\"" + num(total_h - 8) + "\" text-anchor=\"middle\">x</text>\n";
  s += "<text x=\"12.000\" y=\"" + num(kMargin + ph / 2) + "\" text-anchor=\"middle\">t</text>\n";
  for (std::size_t li = 0; li < g.layers.size(); ++li)
    s += "<text x=\"" + num(kMargin + 4) + "\" y=\"" + num(kMargin - 8 - 12.0 * static_cast<double>(g.layers.size() - 1 - li)) +
         "\" fill=\"" + layer_colour(li) + "\">" + escape(g.layers[li].label) + "</text>\n";
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace lqrf::svg
