#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "lorentzqrf/errors.hpp"
#include "lorentzqrf/fit.hpp"

using namespace lqrf;

TEST_SUITE("fit") {

TEST_CASE("Gaussian fit recovers exact parameters") {
  std::vector<double> xs, ys;
  for (int k = -50; k <= 50; ++k) {
    const double x = 0.05 * k;
    xs.push_back(x);
    ys.push_back(3.0 * std::exp(-(x - 0.2) * (x - 0.2) / (2 * 0.4 * 0.4)));
  }
  const auto g = fit::fit_gaussian(xs, ys);
  CHECK(g.center == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(g.sigma == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(g.peak == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(g.rms_log_residual < 1e-12);
}

TEST_CASE("Gaussian fit rejects convex data") {
  std::vector<double> xs, ys;
  for (int k = -10; k <= 10; ++k) {
    xs.push_back(k);
    ys.push_back(std::exp(0.1 * k * k));
  }
  CHECK_THROWS_AS(fit::fit_gaussian(xs, ys), FitError);
  const std::vector<double> few{1.0, 2.0}, vals{1.0, 1.0};
  CHECK_THROWS_AS(fit::fit_gaussian(few, vals), FitError);
}

TEST_CASE("line fit") {
  const std::vector<double> xs{-1, 0, 1, 2}, ts{-1.1, 0.5, 2.1, 3.7};
  const auto l = fit::fit_line(xs, ts);
  CHECK(l.slope == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(l.intercept == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(l.max_residual < 1e-14);
}

TEST_CASE("peak location on a smooth bump") {
  auto f = [](double t, double x) { return std::exp(-((t - 0.31) * (t - 0.31) + 2 * (x + 0.17) * (x + 0.17))); };
  const auto p = fit::locate_peak(f, 0.0, 0.0, 1.0, 41);
  CHECK(p.t == doctest::Approx(0.31).epsilon(1e-10));
  CHECK(p.x == doctest::Approx(-0.17).epsilon(1e-10));
  CHECK_THROWS_AS(fit::locate_peak(f, 3.0, 3.0, 0.5, 21), FitError);
}

TEST_CASE("light-cone apex of a symmetric X pattern") {
  // Two null ridges through (t0, x0); point symmetric about the apex.
  const double t0 = 0.4, x0 = -0.3, w = 0.05;
  auto f = [&](double t, double x) {
    const double u = (t - t0) - (x - x0), v = (t - t0) + (x - x0);
    return std::exp(-u * u / (2 * w * w)) + std::exp(-v * v / (2 * w * w));
  };
  const std::vector<double> offsets{0.2, 0.4};
  const auto p = fit::locate_light_cone_apex(f, t0 + 0.01, x0 - 0.02, offsets, 0.15, 97);
  CHECK(std::abs(p.t - t0) < 1e-3);
  CHECK(std::abs(p.x - x0) < 1e-3);
  auto flat = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(fit::locate_light_cone_apex(flat, 0, 0, offsets, 0.15, 97), FitError);
}

}  // TEST_SUITE
