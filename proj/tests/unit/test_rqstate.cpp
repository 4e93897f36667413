#include <doctest.h>

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "common.hpp"
#include "lorentzqrf/fit.hpp"
#include "lorentzqrf/relkin.hpp"
#include "lorentzqrf/rqstate.hpp"
#include "oracles/bessel_oracle.hpp"

using namespace lqrf;
using namespace lqrf::rqstate;
using unit::grid;

namespace {

const double pi = std::numbers::pi;

template <class F>
double gk(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// int dt dx e^{iEt - ipx} f(t, x) by nested adaptive quadrature of the Gaussian2D integrand.
Complex gaussian2d_transform_oracle(const Gaussian2D& g, double e, double p) {
  auto f = [&](double t, double x) {
    const double dt = t - g.t0, dx = x - g.x0;
    const double env = std::exp(-dt * dt / (4 * g.sigma_t * g.sigma_t) - dx * dx / (4 * g.sigma_x * g.sigma_x));
    return std::polar(env, e * t - p * x - g.omega0 * dt + g.k0 * dx);
  };
  const double ht = 12 * g.sigma_t, hx = 12 * g.sigma_x;
  auto part = [&](auto pick) {
    return gk([&](double t) { return gk([&](double x) { return pick(f(t, x)); }, g.x0 - hx, g.x0 + hx); },
              g.t0 - ht, g.t0 + ht);
  };
  return {part([](Complex z) { return z.real(); }), part([](Complex z) { return z.imag(); })};
}

RapidityState gaussian_state(double t0, double x0, double sigma, double omega0, double k0) {
  return normalize(from_spacetime_function(Gaussian2D{t0, x0, sigma, sigma, omega0, k0}, grid(), Mass(1.0)));
}

RapidityState slice_state() {
  return from_spacetime_function(Slice{0.0, GaussianProfile{0.0, 1.0, 0.0}, 0.0}, grid(), Mass(1.0));
}

double lattice_step(long k) { return static_cast<double>(k) * grid().step(); }

}  // namespace

TEST_SUITE("rqstate") {

TEST_CASE("grid layout") {
  const auto& g = grid();
  CHECK(g.size() == 4096);
  CHECK(g.theta_min() == doctest::Approx(-10.0).epsilon(1e-15));
  CHECK(g.theta_max() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(g.step() == doctest::Approx(20.0 / 4095.0).epsilon(1e-15));
  CHECK_THROWS(RapidityGrid(0.0, 0.1, 4));
  CHECK_THROWS(RapidityGrid(0.0, -0.1, 16));
}

TEST_CASE("point event has unit amplitudes and is improper") {
  const auto s = from_spacetime_function(PointEvent{0.0, 0.0}, grid(), Mass(1.0));
  CHECK(s.improper());
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(s.amplitude(j) == Complex(1.0, 0.0));
  CHECK_THROWS(normalize(s));
  // All phases vanish at the origin: the trapezoid sum of 1/2 over the grid.
  const Complex psi = wavefunction(s, {0.0, 0.0});
  CHECK(psi.real() == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(std::abs(psi.imag()) < 1e-13);
}

TEST_CASE("equal-time Gaussian slice amplitudes") {
  const auto s = slice_state();
  double worst = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double sh = std::sinh(grid().theta(j));
    worst = std::max(worst, std::abs(s.amplitude(j) - 2.0 * std::sqrt(pi) * std::exp(-sh * sh)));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("Gaussian2D transform against 2-D quadrature") {
  const Gaussian2D g{0.3, -0.2, 0.5, 0.5, 1.5, 0.5};
  const auto s = from_spacetime_function(g, grid(), Mass(1.0));
  for (double th : {-1.0, 0.0, 0.4, 1.2, 2.0}) {
    const std::size_t j = static_cast<std::size_t>(std::lround((th - grid().theta_min()) / grid().step()));
    const auto k = relkin::momentum_of_rapidity(Rapidity(grid().theta(j)), Mass(1.0));
    const Complex o = gaussian2d_transform_oracle(g, k.e, k.p);
    CHECK(std::abs(s.amplitude(j) - o) < 1e-6);
  }
}

TEST_CASE("propagator closed forms and symmetries") {
  const Mass m(1.0);
  const auto wt = propagator({{0, 0}, {1, 0}, m}, grid());
  CHECK(std::abs(wt.value - Complex(-0.13868, -1.20197)) < 1e-4);
  CHECK(std::abs(wt.value - oracle::propagator(1.0, 0.0, 1.0)) < 1e-4);
  const auto wx = propagator({{0, 0}, {0, 1}, m}, grid());
  CHECK(wx.value.real() == doctest::Approx(0.42102).epsilon(1e-4));
  CHECK(std::abs(wx.value - oracle::propagator(0.0, 1.0, 1.0)) < 1e-4);

  auto g = unit::rng(11);
  for (int i = 0; i < 20; ++i) {
    const double dt = unit::uniform(g, -3, 3), dx = unit::uniform(g, -3, 3);
    if (std::abs(std::abs(dt) - std::abs(dx)) < 0.2) continue;
    const double at = unit::uniform(g, -5, 5), ax = unit::uniform(g, -5, 5);
    const auto w0 = propagator({{0, 0}, {dt, dx}, m}, grid()).value;
    const auto w1 = propagator({{at, ax}, {at + dt, ax + dx}, m}, grid()).value;
    const auto wr = propagator({{0, 0}, {dt, -dx}, m}, grid()).value;
    CHECK(std::abs(w0 - w1) < 1e-10);
    CHECK(std::abs(w0 - wr) < 1e-10);
    CHECK(std::abs(w0 - oracle::propagator(dt, dx, 1.0)) < 1e-4);
  }
  const auto coincident = propagator({{0, 0}, {0, 0}, m}, grid());
  CHECK(coincident.cutoff_dependent);
}

TEST_CASE("kg_inner: normalization, hermiticity, orthogonality") {
  const auto a = gaussian_state(0.2, -0.4, 1.0, 1.3, 0.4);
  const auto b = gaussian_state(-0.5, 0.7, 0.8, 1.6, -0.6);
  CHECK(std::abs(kg_inner(a, a) - 1.0) < 1e-12);
  CHECK(std::abs(kg_inner(a, b) - std::conj(kg_inner(b, a))) < 1e-15);
  const Complex c{0.3, -1.1};
  CHECK(std::abs(kg_inner(a, c * b) - c * kg_inner(a, b)) < 1e-14);

  const auto n1 = rapidity_gaussian(grid(), Mass(1.0), -2.0, 0.05);
  const auto n2 = rapidity_gaussian(grid(), Mass(1.0), 2.0, 0.05);
  CHECK(std::abs(kg_inner(normalize(n1), normalize(n2))) < 1e-8);

  const auto other = from_spacetime_function(PointEvent{}, RapidityGrid::symmetric(10.0, 1024), Mass(1.0));
  CHECK_THROWS(kg_inner(a, other));
  CHECK_THROWS(kg_inner(a, from_spacetime_function(PointEvent{}, grid(), Mass(2.0))));
}

TEST_CASE("kg_inner equals the equal-time current integral") {
  // <a, b> = (i / 2 pi) int dx (conj(psi_a) d_t psi_b - conj(d_t psi_a) psi_b) at t = 0.
  const auto a = gaussian_state(0.0, -0.3, 1.0, 1.4, 0.3);
  const auto b = gaussian_state(0.1, 0.4, 1.0, 1.5, -0.2);
  const double d = 1e-3, dx = 0.05, half = 25.0;
  const std::array<double, 5> ts{-2 * d, -d, 0.0, d, 2 * d};
  std::vector<double> xs;
  for (double x = -half; x <= half + 1e-12; x += dx) xs.push_back(x);
  const auto pa = wavefunction_grid(a, ts, xs);
  const auto pb = wavefunction_grid(b, ts, xs);
  const std::size_t nx = xs.size();
  auto deriv = [&](const std::vector<Complex>& p, std::size_t k) {
    return (p[k] - 8.0 * p[nx + k] + 8.0 * p[3 * nx + k] - p[4 * nx + k]) / (12.0 * d);
  };
  Complex sum = 0.0, self = 0.0;
  for (std::size_t k = 0; k < nx; ++k) {
    const double w = (k == 0 || k + 1 == nx) ? 0.5 * dx : dx;
    const Complex a0 = pa[2 * nx + k], b0 = pb[2 * nx + k];
    const Complex da = deriv(pa, k), db = deriv(pb, k);
    sum += w * (std::conj(a0) * db - std::conj(da) * b0);
    self += w * (std::conj(a0) * da - std::conj(da) * a0);
  }
  const Complex i{0.0, 1.0};
  CHECK(std::abs(i * sum / (2 * pi) - kg_inner(a, b)) < 1e-4);
  CHECK(std::abs(i * self / (2 * pi) - 1.0) < 1e-4);
}

TEST_CASE("normalize") {
  const auto s = slice_state();
  // |a|^2 = 4 pi e^{-2 sinh^2}; int dtheta / 2 of it is 2 pi e K0(1).
  const double closed = 2 * pi * std::exp(1.0) * oracle::bessel_k0(1.0);
  const double quad = 0.5 * gk([](double th) {
    const double sh = std::sinh(th);
    return 4 * pi * std::exp(-2 * sh * sh);
  }, -10.0, 10.0);
  CHECK(std::abs(closed - quad) < 1e-10 * closed);
  const double n = kg_norm(s);
  CHECK(std::abs(n * n - quad) < 1e-8 * quad);

  const auto u = normalize(s);
  CHECK(std::abs(kg_norm(u) - 1.0) < 1e-12);
  CHECK(unit::max_abs_diff(normalize(u), u) < 1e-12);
  CHECK(unit::max_abs_diff(normalize(Complex(3.0) * s), u) < 1e-12);
  CHECK_THROWS(normalize(Complex(0.0) * s));
}

TEST_CASE("evolve and translate") {
  const auto s = gaussian_state(0.1, 0.2, 0.7, 1.2, 0.5);
  CHECK(unit::max_abs_diff(evolve(s, 0.0), s) == 0.0);
  CHECK(unit::max_abs_diff(translate(s, 0.0, 0.0), s) == 0.0);
  CHECK(unit::max_abs_diff(evolve(evolve(s, 0.7), -1.9), evolve(s, -1.2)) < 1e-12);
  CHECK(unit::max_abs_diff(translate(s, 0.8, 0.0), evolve(s, -0.8)) < 1e-15);
  CHECK(std::abs(kg_norm(evolve(s, 3.3)) - 1.0) < 1e-12);
  CHECK(std::abs(kg_norm(translate(s, -2.1, 4.2)) - 1.0) < 1e-12);

  for (const SpacetimePoint pt : {SpacetimePoint{0.5, -0.4}, SpacetimePoint{-1.0, 1.5}})
    CHECK(std::abs(wavefunction(evolve(s, 0.6), pt) - wavefunction(s, {pt.t + 0.6, pt.x})) < 1e-12);

  const auto pe = translate(from_spacetime_function(PointEvent{0, 0}, grid(), Mass(1.0)), 1.5, -0.5);
  const auto direct = from_spacetime_function(PointEvent{1.5, -0.5}, grid(), Mass(1.0));
  CHECK(unit::max_abs_diff(pe, direct) < 1e-10);

  const Gaussian2D g{0.2, -0.1, 0.6, 0.9, 1.1, 0.3};
  const auto shifted_state = from_spacetime_function(shifted(g, 0.7, -1.3), grid(), Mass(1.0));
  CHECK(unit::max_abs_diff(shifted_state, translate(from_spacetime_function(g, grid(), Mass(1.0)), 0.7, -1.3)) < 1e-10);
}

TEST_CASE("boost_state: identity, lattice shift, covariance") {
  const auto s = gaussian_state(0.3, -0.2, 0.8, 1.4, 0.2);
  CHECK(unit::max_abs_diff(boost_state(s, Rapidity(0.0)), s) == 0.0);

  for (long k : {1L, -7L, 64L, 141L}) {
    const Rapidity al(lattice_step(k));
    const auto rep = boost_state_detailed(s, al);
    CHECK(rep.exact_shift);
    CHECK_FALSE(rep.truncated);
    CHECK(std::abs(kg_norm(rep.state) - 1.0) < 1e-14);
    for (const SpacetimePoint pt : {SpacetimePoint{0.3, -0.2}, SpacetimePoint{1.0, 0.5}}) {
      const Complex lhs = wavefunction(rep.state, relkin::boost_point(al, pt));
      CHECK(std::abs(lhs - wavefunction(s, pt)) < 1e-10);
    }
  }
  for (double a : {0.37, -0.81, std::numbers::ln2}) {
    const auto rep = boost_state_detailed(s, Rapidity(a));
    CHECK_FALSE(rep.exact_shift);
    CHECK(rep.interpolation_residual > 0.0);
    for (const SpacetimePoint pt : {SpacetimePoint{0.3, -0.2}, SpacetimePoint{1.0, 0.5}}) {
      const Complex lhs = wavefunction(rep.state, relkin::boost_point(Rapidity(a), pt));
      CHECK(std::abs(lhs - wavefunction(s, pt)) < 1e-6);
    }
  }
}

TEST_CASE("boost_state warns when support reaches the grid edge") {
  const auto s = normalize(rapidity_gaussian(grid(), Mass(1.0), 7.0, 0.3));
  const auto rep = boost_state_detailed(s, Rapidity(-lattice_step(500)));
  CHECK(rep.truncated);
  CHECK_FALSE(rep.state.warnings().empty());
}

TEST_CASE("boosted slice lies on the tilted line") {
  // Narrow teeth on t = t0; after the boost their apexes lie on t' = t0 / cosh a - tanh a x'.
  const double t0 = 0.5, tooth = 0.05;
  const Rapidity al(lattice_step(142));  // close to ln 2
  std::vector<double> xs, ts;
  for (double xc : {-1.0, 0.0, 1.0}) {
    const auto s = from_spacetime_function(Slice{t0, GaussianProfile{xc, tooth, 0.0}, 0.0}, grid(), Mass(1.0));
    const auto b = boost_state(s, al);
    const auto pred = relkin::boost_point(al, {t0, xc});
    const double scale = tooth * al.gamma();
    const std::array<double, 2> offsets{3 * scale, 6 * scale};
    const auto pk = fit::locate_light_cone_apex(
        [&](double t, double x) { return std::norm(wavefunction(b, {t, x})); }, pred.t, pred.x, offsets, 3 * scale, 97);
    xs.push_back(pk.x);
    ts.push_back(pk.t);
  }
  const auto line = fit::fit_line(xs, ts);
  const double a = al.value();
  CHECK(line.slope == doctest::Approx(-std::tanh(a)).epsilon(0.01));
  CHECK(line.intercept == doctest::Approx(t0 / std::cosh(a)).epsilon(0.01));
}

TEST_CASE("kg_equation_residual") {
  const auto s = normalize(slice_state());
  std::vector<SpacetimePoint> pts;
  for (double t : {-1.0, 0.0, 0.7})
    for (double x : {-2.0, 0.0, 1.5}) pts.push_back({t, x});
  const double r0 = kg_equation_residual(s, pts);
  CHECK(r0 < 1e-8);
  CHECK(kg_equation_residual(evolve(s, 2.5), pts) < 1e-8);
  const double rp = kg_equation_residual(from_spacetime_function(PointEvent{}, grid(), Mass(1.0)), pts);
  CHECK(std::isfinite(rp));
}

}  // TEST_SUITE
