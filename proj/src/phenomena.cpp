#include "lorentzqrf/phenomena.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lorentzqrf/errors.hpp"
#include "lorentzqrf/fit.hpp"
#include "lorentzqrf/plotting.hpp"
#include "lorentzqrf/qrf.hpp"

namespace lqrf::phenomena {

namespace {

constexpr Complex I{0.0, 1.0};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string branch_label(std::size_t i) { return "branch " + std::to_string(i + 1); }

std::vector<qrf::SharpBranch> equal_branches(const std::vector<double>& omegas, relkin::Mass m) {
  std::vector<qrf::SharpBranch> b;
  const double c = 1.0 / std::sqrt(static_cast<double>(omegas.size()));
  for (double w : omegas) b.push_back({relkin::Rapidity(w), c, m});
  return b;
}

void require_distinct(std::vector<double> w) {
  std::sort(w.begin(), w.end());
  if (std::adjacent_find(w.begin(), w.end()) != w.end())
    throw std::invalid_argument("branch rapidities must be distinct");
}

double intensity(const rqstate::RapidityState& s, double t, double x) {
  return std::norm(rqstate::wavefunction(s, {t, x}));
}

}  // namespace

void PlotSpec::validate() const {
  if (nt > kMaxResolution || nx > kMaxResolution)
    throw ConfigError("plot resolution exceeds 2048 x 2048 per panel");
  if ((nt == 0) != (nx == 0)) throw ConfigError("plot resolution needs both nt and nx");
  if (quantity != "abs2" && quantity != "re") throw ConfigError("plot quantity must be 'abs2' or 're'");
}

ScenarioReport run_time_dilation(const DilationScenario& s, const PlotSpec& plot) {
  if (!(s.t2 > s.t1)) throw std::invalid_argument("time dilation needs t2 > t1");
  if (s.omega1 == s.omega2) throw std::invalid_argument("time dilation needs distinct branch rapidities");
  const double dt = s.t2 - s.t1;
  const std::vector<double> omegas{s.omega1, s.omega2};

  ScenarioReport r;
  r.scenario = "time-dilation";
  for (std::size_t i = 0; i < 2; ++i) {
    const relkin::Rapidity w(omegas[i]);
    const auto e1 = relkin::boost_point(-w, {s.t1, s.x0});
    const auto e2 = relkin::boost_point(-w, {s.t2, s.x0});
    r.branches.push_back(make_check(branch_label(i), omegas[i], "interval", std::cosh(omegas[i]) * dt, e2.t - e1.t,
                                    1e-12, true, "exact-event"));
  }

  if (s.mode == DilationScenario::Mode::narrow_gaussian) {
    if (!(s.sigma > 0.0)) throw std::invalid_argument("packet width must be positive");
    const double half = std::max(0.1, 5.0 * s.sigma);
    if (2.0 * half >= dt)
      throw FitError("packet width " + fmt("%.6g", s.sigma) + " too large to separate peaks with spacing " +
                     fmt("%.6g", dt));
    const relkin::Mass m(s.mass);
    const auto grid = s.grid.make();
    std::vector<rqstate::RapidityState> events;
    for (double t : {s.t1, s.t2})
      events.push_back(rqstate::normalize(
          rqstate::from_spacetime_function(Gaussian2D{t, s.x0, s.sigma, s.sigma, 0.0, 0.0}, grid, m)));
    std::vector<std::vector<rqstate::RapidityState>> payloads(2, events);
    const auto in = qrf::make_branched_state("C", m, "A", equal_branches(omegas, m), {"B1", "B2"}, payloads);
    const auto out = qrf::change_frame(in, "C", "A");

    std::vector<std::pair<std::string, rqstate::RapidityState>> layers;
    double tmin = 1e300, tmax = -1e300, xmin = 1e300, xmax = -1e300;
    for (std::size_t i = 0; i < out.branches.size(); ++i) {
      const double w = -out.branches[i].rapidity.value();
      std::vector<double> tk;
      for (std::size_t k = 0; k < 2; ++k) {
        const auto pred = relkin::boost_point(relkin::Rapidity(-w), {k == 0 ? s.t1 : s.t2, s.x0});
        const auto& st = out.payloads[i][k];
        const double scale = s.sigma * std::cosh(w);
        const std::array<double, 2> offsets{8.0 * scale, 16.0 * scale};
        const auto pk = fit::locate_light_cone_apex([&](double t, double x) { return intensity(st, t, x); }, pred.t,
                                                    pred.x, offsets, 6.0 * scale, 97);
        tk.push_back(pk.t);
        tmin = std::min(tmin, pred.t);
        tmax = std::max(tmax, pred.t);
        xmin = std::min(xmin, pred.x);
        xmax = std::max(xmax, pred.x);
        for (const auto& warn : st.warnings()) r.warnings.push_back(branch_label(i) + ": " + warn);
      }
      const std::size_t src = w == s.omega1 ? 0 : 1;
      r.branches.push_back(make_check(branch_label(src), w, "interval", std::cosh(w) * dt, tk[1] - tk[0], 1e-2,
                                      true, "wave-packet"));
      if (plot.nt > 0) {
        layers.emplace_back(branch_label(src) + " B1", out.payloads[i][0]);
        layers.emplace_back(branch_label(src) + " B2", out.payloads[i][1]);
      }
    }
    if (plot.nt > 0) {
      const double pad = std::max(0.5, 10.0 * s.sigma);
      r.grids.push_back(sample_states("events", plot, {tmin - pad, tmax + pad, xmin - pad, xmax + pad}, layers));
    }
  }
  std::stable_sort(r.branches.begin(), r.branches.end(), [](const BranchResult& a, const BranchResult& b) {
    return a.path != b.path ? a.path < b.path : a.label < b.label;
  });
  return r;
}

ScenarioReport run_length_contraction(const ContractionScenario& s) {
  const double dx = s.x2 - s.x1;
  if (!(std::abs(dx) > 0.0)) throw std::invalid_argument("length contraction needs x2 != x1");
  auto check_pair = [&](const char* name, double t1, double t2, double v) {
    const double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(v * dx)});
    if (std::abs((t2 - t1) - v * dx) > 1e-12 * scale)
      throw std::invalid_argument(std::string("simultaneity condition violated for pair ") + name +
                                  ": dt = " + fmt("%.17g", t2 - t1) + " but v dx = " + fmt("%.17g", v * dx));
  };
  check_pair("(B1,B2)", s.t_b1, s.t_b2, s.v_b);
  check_pair("(D1,D2)", s.t_d1, s.t_d2, s.v_d);

  ScenarioReport r;
  r.scenario = "length-contraction";
  struct Branch {
    const char* label;
    const char* pair;
    double v, t1, t2;
  };
  const Branch bs[] = {{"branch b", "B", s.v_b, s.t_b1, s.t_b2}, {"branch d", "D", s.v_d, s.t_d1, s.t_d2}};
  Table tab{"events", {"branch", "t1", "x1", "t2", "x2"}, {}};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& b = bs[i];
    // Comoving frame of velocity v: (t', x') = Lambda_{atanh v} (t, x).
    const relkin::Rapidity w = relkin::Rapidity::from_velocity(b.v);
    const auto e1 = relkin::boost_point(w, {b.t1, s.x1});
    const auto e2 = relkin::boost_point(w, {b.t2, s.x2});
    r.branches.push_back(make_check(std::string(b.label) + " " + b.pair + "-pair", w.value(), "length",
                                    dx / w.gamma(), e2.x - e1.x, 1e-12, true, "exact-event"));
    r.branches.push_back(make_check(std::string(b.label) + " " + b.pair + "-pair", w.value(), "simultaneity", 0.0,
                                    e2.t - e1.t, 1e-12, false, "exact-event"));
    tab.rows.push_back({static_cast<double>(i), e1.t, e1.x, e2.t, e2.x});
  }
  r.tables.push_back(std::move(tab));
  return r;
}

ScenarioReport run_width_contraction(const WidthScenario& s, const PlotSpec& plot) {
  if (!(s.sigma > 0.0)) throw std::invalid_argument("width scenario needs sigma > 0");
  if (s.omegas.empty()) throw std::invalid_argument("width scenario needs at least one branch");
  require_distinct(s.omegas);
  const relkin::Mass m(s.mass);
  const auto grid = s.grid.make();
  const double h = grid.step();
  // Rapidity support scales like asinh(1 / (sigma m)); both tails must fit the grid.
  for (double w : s.omegas) {
    const double sw = s.sigma / std::cosh(w);
    if (sw * m.value() * std::sinh(0.95 * s.grid.half_width - std::abs(w)) < 5.0)
      throw std::invalid_argument("contracted width " + fmt("%.6g", sw) + " is below the grid resolution");
    if (s.sigma * m.value() * h > 0.05)
      throw std::invalid_argument("width " + fmt("%.6g", s.sigma) + " is too wide for the rapidity step");
  }

  std::vector<std::vector<rqstate::RapidityState>> payloads;
  for (double w : s.omegas)
    payloads.push_back({rqstate::normalize(rqstate::from_spacetime_function(
        Slice{0.0, GaussianProfile{0.0, s.sigma, 0.0}, -std::tanh(w)}, grid, m))});
  const auto in = qrf::make_branched_state("C", m, "A", equal_branches(s.omegas, m), {"B"}, payloads);
  const auto out = qrf::change_frame(in, "C", "A");

  ScenarioReport r;
  r.scenario = "width-contraction";
  std::vector<std::pair<std::string, rqstate::RapidityState>> layers;
  double xr = s.sigma;
  for (std::size_t i = 0; i < out.branches.size(); ++i) {
    const double w = -out.branches[i].rapidity.value();
    const std::size_t src = static_cast<std::size_t>(std::find(s.omegas.begin(), s.omegas.end(), w) - s.omegas.begin());
    const std::string label = branch_label(src);
    const double pred = s.sigma / std::cosh(w);
    const auto& st = out.payloads[i][0];

    // Coordinate route: endpoints (-tanh w x, x) at x = +-sigma land on t = 0.
    const auto a = relkin::boost_point(relkin::Rapidity(-w), {std::tanh(w) * s.sigma, -s.sigma});
    const auto b = relkin::boost_point(relkin::Rapidity(-w), {-std::tanh(w) * s.sigma, s.sigma});
    const double coord = 0.5 * (b.x - a.x);
    r.branches.push_back(make_check(label, w, "width", pred, coord, 1e-12, true, "exact-event"));

    const std::size_t n = 201;
    std::vector<double> xs(n), ys(n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = -5.0 * pred + 10.0 * pred * static_cast<double>(k) / static_cast<double>(n - 1);
      ys[k] = std::norm(rqstate::equal_time_profile(st, 0.0, xs[k]));
    }
    const auto g = fit::fit_gaussian(xs, ys);
    if (g.rms_log_residual > 1e-2)
      throw FitError(label + ": width fit residual " + fmt("%.3g", g.rms_log_residual) + " exceeds 1e-2");
    r.branches.push_back(make_check(label, w, "width", pred, g.sigma, 1e-2, true, "wave-packet"));
    r.branches.push_back(make_check(label, w, "width-route-agreement", coord, g.sigma, 1e-2, true, "wave-packet"));
    r.metrics.emplace_back(label + " fit rms log residual", g.rms_log_residual);
    for (const auto& warn : st.warnings()) r.warnings.push_back(label + ": " + warn);
    if (plot.nt > 0) layers.emplace_back(label, st);
    xr = std::max(xr, pred);
  }
  if (plot.nt > 0) r.grids.push_back(sample_states("slices", plot, {-4.0 * xr, 4.0 * xr, -4.0 * xr, 4.0 * xr}, layers));
  std::stable_sort(r.branches.begin(), r.branches.end(), [](const BranchResult& a, const BranchResult& b) {
    return a.label != b.label ? a.label < b.label : a.path < b.path;
  });
  return r;
}

Complex nonrel_fourier(const InterferenceScenario& s, double omega, double nu, double k) {
  const double a = 1.0 + 0.5 * omega * omega;
  const double det = a * a - omega * omega;
  // r = M^{-1} (nu, -k) with M = [[a, -omega], [-omega, a]].
  const double r0 = (a * nu - omega * k) / det;
  const double r1 = (omega * nu - a * k) / det;
  const double mag = 4.0 * std::numbers::pi * s.sigma_t * s.sigma_x / std::abs(det) *
                     std::exp(-(s.sigma_t * s.sigma_t * r0 * r0 + s.sigma_x * s.sigma_x * r1 * r1));
  return mag * std::exp(I * (r0 * s.t0 + r1 * s.x0));
}

measure::ProbabilityReport run_nonrel_interference(const InterferenceScenario& s) {
  for (double w : {s.omega1, s.omega2})
    if (!(std::abs(w) <= 0.1)) throw std::domain_error("expansion validity requires |omega| <= 0.1, got " + fmt("%.6g", w));
  if (!(s.sigma_x > 0.0) || !(s.sigma_t > 0.0) || !(s.mass > 0.0))
    throw std::invalid_argument("interference scenario needs positive widths and mass");
  if (s.t_probe == s.t0) throw std::domain_error("probe time equals the packet time: propagator singular at dt = 0");
  if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("postselection sign must be +1 or -1");

  const double m = s.mass;
  auto f = [&](double w, double p) { return nonrel_fourier(s, w, p * p / (2.0 * m), p); };

  double pmax = 1.0;
  auto tail = [&](double p) {
    double v = 0.0;
    for (double w : {0.0, s.omega1, s.omega2}) v = std::max({v, std::abs(f(w, p)), std::abs(f(w, -p))});
    return v;
  };
  const double peak = std::max(tail(0.0), tail(1.0 / s.sigma_x));
  while (tail(pmax) > 1e-18 * peak || tail(0.8 * pmax) > 1e-18 * peak) pmax *= 1.25;

  const double d = pmax * (std::abs(s.t_probe) + std::abs(s.t0)) / m + std::abs(s.x_probe) + std::abs(s.x0) +
                   s.sigma_x + pmax * s.sigma_t / m + 1.0;
  const std::size_t n = std::clamp<std::size_t>(static_cast<std::size_t>(2.0 * pmax * d / 0.2) | 1u, 4001, 400001);
  const double dp = 2.0 * pmax / static_cast<double>(n - 1);

  double norm0 = 0.0;
  Complex a1 = 0.0, a2 = 0.0;
  double n1 = 0.0, n2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = -pmax + dp * static_cast<double>(j);
    const double w = (j == 0 || j + 1 == n) ? 0.5 * dp : dp;
    const Complex ket = std::exp(I * (-p * p * s.t_probe / (2.0 * m) + p * s.x_probe));
    const Complex f1 = f(s.omega1, p), f2 = f(s.omega2, p);
    norm0 += w * std::norm(f(0.0, p));
    n1 += w * std::norm(f1);
    n2 += w * std::norm(f2);
    a1 += w * ket * f1;
    a2 += w * ket * f2;
  }
  const double c = 1.0 / std::sqrt(norm0);
  // Unitary Schroedinger kernel: <x|p> = e^{ipx} / sqrt(2 pi).
  a1 *= c / std::sqrt(2.0 * std::numbers::pi);
  a2 *= c / std::sqrt(2.0 * std::numbers::pi);

  const double b1 = 0.25 * std::norm(a1);
  const double b2 = 0.25 * std::norm(a2);
  const double interference = 0.5 * std::real(std::conj(a1) * a2);
  const double p_plus = b1 + b2 + interference;
  const double p_minus = b1 + b2 - interference;

  double overlap = 0.0;
  if (s.frame_width > 0.0) {
    const double dw = s.omega1 - s.omega2;
    overlap = std::exp(-dw * dw / (8.0 * s.frame_width * s.frame_width));
  } else {
    overlap = s.omega1 == s.omega2 ? 1.0 : 0.0;
  }

  measure::ProbabilityReport r;
  r.value = s.sign > 0 ? p_plus : p_minus;
  r.components = {{"branch_1", b1},
                  {"branch_2", b2},
                  {"interference", interference},
                  {"p_plus", p_plus},
                  {"p_minus", p_minus},
                  {"total", 0.5 * (std::norm(a1) + std::norm(a2))},
                  {"normalization_C", c},
                  {"norm_f1", c * c * n1},
                  {"norm_f2", c * c * n2},
                  {"frame_overlap", overlap},
                  {"p_cutoff", pmax},
                  {"p_nodes", static_cast<double>(n)}};
  if (std::abs(overlap) >= 1e-3)
    r.warnings.push_back("frame branch overlap " + fmt("%.3g", overlap) + " is not negligible; orthogonality approximation fails");
  if (r.value > 1.0 + 1e-10) r.warnings.push_back("probability density exceeds 1");
  return r;
}

}  // namespace lqrf::phenomena
