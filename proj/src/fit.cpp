#include "lorentzqrf/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "lorentzqrf/errors.hpp"

namespace lqrf::fit {

GaussianFit fit_gaussian(std::span<const double> xs, std::span<const double> y) {
  if (xs.size() != y.size()) throw FitError("fit_gaussian: x and intensity sizes differ");
  double ymax = 0.0, xmid = 0.0, xscale = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) ymax = std::max(ymax, y[i]);
  if (!(ymax > 0.0)) throw FitError("fit_gaussian: intensity is identically zero");
  for (double x : xs) xmid += x;
  xmid /= static_cast<double>(xs.size());
  for (double x : xs) xscale = std::max(xscale, std::abs(x - xmid));
  if (!(xscale > 0.0)) throw FitError("fit_gaussian: degenerate abscissae");

  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  std::size_t used = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(y[i] > 1e-300)) continue;
    const double u = (xs[i] - xmid) / xscale;
    const double w = (y[i] / ymax) * (y[i] / ymax);
    const Eigen::Vector3d phi(1.0, u, u * u);
    a += w * phi * phi.transpose();
    b += w * phi * std::log(y[i] / ymax);
    ++used;
  }
  if (used < 3) throw FitError("fit_gaussian: fewer than three positive samples");
  const Eigen::Vector3d c = a.ldlt().solve(b);
  if (!(c(2) < 0.0)) throw FitError("fit_gaussian: log-intensity has no maximum (curvature " + std::to_string(c(2)) + ")");

  GaussianFit out;
  out.samples = used;
  const double c2 = c(2) / (xscale * xscale);
  out.sigma = std::sqrt(-1.0 / (2.0 * c2));
  out.center = xmid - c(1) * xscale / (2.0 * c(2));
  out.peak = ymax * std::exp(c(0) - c(1) * c(1) / (4.0 * c(2)));
  double rss = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(y[i] > 1e-300)) continue;
    const double u = (xs[i] - xmid) / xscale;
    const double w = (y[i] / ymax) * (y[i] / ymax);
    const double r = std::log(y[i] / ymax) - (c(0) + c(1) * u + c(2) * u * u);
    rss += w * r * r;
    wsum += w;
  }
  out.rms_log_residual = std::sqrt(rss / wsum);
  return out;
}

PeakFit locate_peak(const std::function<double(double, double)>& intensity, double t0, double x0, double half,
                    std::size_t n) {
  if (n < 7) throw FitError("locate_peak: grid too coarse");
  const double step = 2.0 * half / static_cast<double>(n - 1);
  std::vector<double> v(n * n);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      v[i * n + j] = intensity(t0 - half + step * static_cast<double>(i), x0 - half + step * static_cast<double>(j));
      if (v[i * n + j] > v[best]) best = i * n + j;
    }
  const std::size_t bi = best / n, bj = best % n;
  if (bi < 2 || bj < 2 || bi + 2 >= n || bj + 2 >= n)
    throw FitError("locate_peak: maximum on the search-window edge; peaks not separated");
  if (!(v[best] > 0.0)) throw FitError("locate_peak: intensity vanishes in the search window");

  Eigen::Matrix<double, 6, 6> a = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> b = Eigen::Matrix<double, 6, 1>::Zero();
  for (int di = -2; di <= 2; ++di)
    for (int dj = -2; dj <= 2; ++dj) {
      const double y = v[(bi + di) * n + (bj + dj)];
      if (!(y > 0.0)) continue;
      const double r = y / v[best];
      const double u = di, w = dj;
      Eigen::Matrix<double, 6, 1> phi;
      phi << 1.0, u, w, u * u, u * w, w * w;
      a += r * r * phi * phi.transpose();
      b += r * r * phi * std::log(r);
    }
  const Eigen::Matrix<double, 6, 1> c = a.ldlt().solve(b);
  Eigen::Matrix2d hess;
  hess << 2.0 * c(3), c(4), c(4), 2.0 * c(5);
  if (!(hess(0, 0) < 0.0) || !(hess.determinant() > 0.0)) throw FitError("locate_peak: local model has no maximum");
  const Eigen::Vector2d off = hess.ldlt().solve(-Eigen::Vector2d(c(1), c(2)));
  if (std::abs(off(0)) > 1.5 || std::abs(off(1)) > 1.5) throw FitError("locate_peak: refinement left the neighbourhood");
  PeakFit out;
  out.t = t0 - half + step * (static_cast<double>(bi) + off(0));
  out.x = x0 - half + step * (static_cast<double>(bj) + off(1));
  out.value = v[best] * std::exp(c(0) + 0.5 * Eigen::Vector2d(c(1), c(2)).dot(off));
  return out;
}

namespace {

// Refined location of the maximum of f on [c - half, c + half].
double ridge_crossing(const std::function<double(double)>& f, double c, double half, std::size_t n) {
  const double step = 2.0 * half / static_cast<double>(n - 1);
  std::vector<double> v(n);
  std::size_t best = 0;
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = f(c - half + step * static_cast<double>(k));
    if (v[k] > v[best]) best = k;
  }
  if (best == 0 || best + 1 == n) throw FitError("locate_light_cone_apex: ridge crossing on the scan edge");
  if (!(v[best - 1] > 0.0) || !(v[best + 1] > 0.0)) throw FitError("locate_light_cone_apex: intensity vanishes");
  const double l = std::log(v[best - 1]), m = std::log(v[best]), r = std::log(v[best + 1]);
  const double curv = l - 2.0 * m + r;
  const double off = curv < 0.0 ? 0.5 * (l - r) / curv : 0.0;
  return c - half + step * (static_cast<double>(best) + off);
}

}  // namespace

PeakFit locate_light_cone_apex(const std::function<double(double, double)>& intensity, double t0, double x0,
                               std::span<const double> offsets, double half, std::size_t n) {
  if (offsets.empty()) throw FitError("locate_light_cone_apex: no ridge offsets");
  if (n < 5) throw FitError("locate_light_cone_apex: scan too coarse");
  const double ug = t0 - x0, vg = t0 + x0;
  auto at = [&](double u, double v) { return intensity(0.5 * (u + v), 0.5 * (v - u)); };
  double u0 = 0.0, v0 = 0.0;
  for (double d : offsets)
    for (double sgn : {-1.0, 1.0}) {
      u0 += ridge_crossing([&](double u) { return at(u, vg + sgn * d); }, ug, half, n);
      v0 += ridge_crossing([&](double v) { return at(ug + sgn * d, v); }, vg, half, n);
    }
  u0 /= 2.0 * static_cast<double>(offsets.size());
  v0 /= 2.0 * static_cast<double>(offsets.size());
  PeakFit out;
  out.t = 0.5 * (u0 + v0);
  out.x = 0.5 * (v0 - u0);
  out.value = intensity(out.t, out.x);
  return out;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ts) {
  if (xs.size() != ts.size() || xs.size() < 2) throw FitError("fit_line: need at least two points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, st = 0, sxx = 0, sxt = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    st += ts[i];
    sxx += xs[i] * xs[i];
    sxt += xs[i] * ts[i];
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw FitError("fit_line: abscissae coincide");
  LineFit out;
  out.slope = (n * sxt - sx * st) / den;
  out.intercept = (st - out.slope * sx) / n;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.max_residual = std::max(out.max_residual, std::abs(ts[i] - out.slope * xs[i] - out.intercept));
  return out;
}

}  // namespace lqrf::fit
