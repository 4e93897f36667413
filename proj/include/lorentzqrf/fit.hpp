#pragma once

#include <functional>
#include <span>

namespace lqrf::fit {

struct GaussianFit {
  double center = 0.0;
  double sigma = 0.0;   // standard deviation of the intensity profile
  double peak = 0.0;
  double rms_log_residual = 0.0;
  std::size_t samples = 0;
};

// Weighted least squares of log(y) against a quadratic; weights y^2.
// Throws FitError when the curvature is not negative or too few positive samples exist.
GaussianFit fit_gaussian(std::span<const double> xs, std::span<const double> intensity);

struct PeakFit {
  double t = 0.0;
  double x = 0.0;
  double value = 0.0;
};

// Argmax of intensity on an n x n grid of half-width `half` around (t0, x0), refined by a
// quadratic fit of log(intensity) on the 5 x 5 neighbourhood. Throws FitError if the maximum
// sits on the window edge or the local model has no maximum.
PeakFit locate_peak(const std::function<double(double, double)>& intensity, double t0, double x0, double half,
                    std::size_t n);

// Apex of the light-cone pattern |psi|^2 of a localized positive-energy packet, where a 2-D peak
// model fails because the intensity is nearly flat along the null ridges. Each ridge u = t - x = u0
// (v = t + x = v0) is crossed by lines of fixed v (u) at the signed offsets +-d from the guess; the
// 1-D maxima (n samples over +-half, parabolic refinement of log intensity) are averaged. Point
// symmetry of |psi|^2 about the event cancels the crossing bias between +d and -d.
PeakFit locate_light_cone_apex(const std::function<double(double, double)>& intensity, double t0, double x0,
                               std::span<const double> offsets, double half, std::size_t n);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Ordinary least squares t = slope x + intercept.
LineFit fit_line(std::span<const double> xs, std::span<const double> ts);

}  // namespace lqrf::fit
