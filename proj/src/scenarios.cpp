#include "lorentzqrf/scenarios.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hankel.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lorentzqrf/coordqrf.hpp"
#include "lorentzqrf/errors.hpp"
#include "lorentzqrf/fit.hpp"
#include "lorentzqrf/plotting.hpp"
#include "lorentzqrf/qrf.hpp"

namespace lqrf::scenarios {

namespace {

constexpr Complex I{0.0, 1.0};

std::string branch_label(std::size_t i) { return "branch " + std::to_string(i + 1); }

// 1% relative, or 1e-2 absolute when the prediction vanishes.
BranchResult percent_check(std::string label, double w, std::string q, double pred, double meas, std::string path) {
  const bool rel = std::abs(pred) >= 1e-3;
  return make_check(std::move(label), w, std::move(q), pred, meas, 1e-2, rel, std::move(path));
}

std::size_t source_index(double w, double w1) { return w == w1 ? 0 : 1; }

}  // namespace

Complex propagator_closed_form(double dt, double dx, double m) {
  const double s2 = (dt - dx) * (dt + dx);
  if (s2 > 0.0) {
    const double z = m * std::sqrt(s2);
    const double pi = std::numbers::pi;
    if (dt > 0.0) return -I * (pi / 2.0) * boost::math::cyl_hankel_2(0, z);
    return I * (pi / 2.0) * boost::math::cyl_hankel_1(0, z);
  }
  if (s2 < 0.0) return boost::math::cyl_bessel_k(0, m * std::sqrt(-s2));
  throw std::domain_error("propagator diverges on the light cone");
}

ScenarioReport run_superposition_of_boosts(const BoostSuperposition& s, const PlotSpec& plot) {
  if (s.omega1 == s.omega2) throw std::invalid_argument("superposition of boosts needs distinct rapidities");
  const relkin::Mass m(s.mass);
  const auto grid = s.grid.make();
  const auto fb = rqstate::normalize(
      rqstate::from_spacetime_function(Gaussian2D{s.t0, s.x0, s.sigma, s.sigma, 0.0, 0.0}, grid, m));
  const double cn = std::sqrt(s.c1 * s.c1 + s.c2 * s.c2);
  if (!(cn > 0.0)) throw std::invalid_argument("branch amplitudes vanish");
  const std::vector<qrf::SharpBranch> branches{{relkin::Rapidity(s.omega1), s.c1 / cn, m},
                                               {relkin::Rapidity(s.omega2), s.c2 / cn, m}};
  const auto in = qrf::make_branched_state("C", m, "A", branches, {"B"}, {{fb}, {fb}});
  const auto out = qrf::change_frame(in, "C", "A");
  const auto back = qrf::change_frame(out, "A", "C");

  ScenarioReport r;
  r.scenario = "superposition-of-boosts";
  // Lattice-aligned boosts permute amplitudes; others interpolate, which is not exactly unitary.
  const double h = grid.step();
  auto aligned = [h](double w) { return std::abs(w / h - std::round(w / h)) <= 1e-9; };
  const bool exact = aligned(s.omega1) && aligned(s.omega2);
  r.branches.push_back(make_check("global", 0.0, "norm", in.norm_squared(), out.norm_squared(), exact ? 1e-12 : 1e-4,
                                  true, exact ? "lattice-boost" : "interpolated-boost"));

  std::vector<std::pair<std::string, rqstate::RapidityState>> layers;
  double tmin = 1e300, tmax = -1e300, xmin = 1e300, xmax = -1e300;
  for (std::size_t i = 0; i < out.branches.size(); ++i) {
    const double w = -out.branches[i].rapidity.value();
    const std::string label = branch_label(source_index(w, s.omega1));
    const auto pred = relkin::boost_point(relkin::Rapidity(-w), {s.t0, s.x0});
    const auto& st = out.payloads[i][0];
    const double half = std::max(0.1, 5.0 * s.sigma);
    const auto pk = fit::locate_peak([&](double t, double x) { return std::norm(rqstate::wavefunction(st, {t, x})); },
                                     pred.t, pred.x, half, 41);
    r.branches.push_back(percent_check(label, w, "peak t", pred.t, pk.t, "wave-packet"));
    r.branches.push_back(percent_check(label, w, "peak x", pred.x, pk.x, "wave-packet"));
    for (const auto& warn : st.warnings()) r.warnings.push_back(label + ": " + warn);
    tmin = std::min(tmin, pred.t);
    tmax = std::max(tmax, pred.t);
    xmin = std::min(xmin, pred.x);
    xmax = std::max(xmax, pred.x);
    if (plot.nt > 0) layers.emplace_back(label, st);
  }
  double round_trip = 0.0;
  for (std::size_t i = 0; i < in.branches.size(); ++i) {
    round_trip = std::max(round_trip, std::abs(in.effective_amplitude(i) - back.effective_amplitude(i)));
    const auto a = in.payloads[i][0].amplitudes(), b = back.payloads[i][0].amplitudes();
    for (std::size_t j = 0; j < a.size(); ++j) round_trip = std::max(round_trip, std::abs(a[j] - b[j]));
  }
  const auto gram = qrf::branch_overlap_matrix(out);
  r.metrics.emplace_back("round-trip max amplitude error", round_trip);
  r.metrics.emplace_back("gram |G_12|", std::abs(gram(0, 1)));
  r.metrics.emplace_back("frame purity", qrf::frame_purity(out));
  if (plot.nt > 0) {
    const double pad = std::max(0.5, 8.0 * s.sigma);
    r.grids.push_back(sample_states("branches", plot, {tmin - pad, tmax + pad, xmin - pad, xmax + pad}, layers));
  }
  return r;
}

ScenarioReport run_superposed_slice(const SuperposedSlice& s, const PlotSpec& plot) {
  if (s.omega1 == s.omega2) throw std::invalid_argument("superposed slice needs distinct rapidities");
  if (s.teeth < 2) throw std::invalid_argument("ridge fit needs at least two comb teeth");
  if (!(s.tooth > 0.0) || !(s.spacing >= 20.0 * s.tooth)) throw std::invalid_argument("comb teeth must be narrow and separated");
  const auto grid = s.grid.make();
  const relkin::Mass ma(s.m_a), mb(s.m_b), mc(s.m_c);

  std::vector<double> centers;
  for (std::size_t k = 0; k < s.teeth; ++k)
    centers.push_back((static_cast<double>(k) - 0.5 * static_cast<double>(s.teeth - 1)) * s.spacing);
  const double edge = centers.back() + 12.0 * s.tooth;
  const double c = 1.0 / std::sqrt(2.0);
  const std::vector<qrf::SharpBranch> branches{{relkin::Rapidity(s.omega1), c, ma}, {relkin::Rapidity(s.omega2), c, ma}};
  // The construction is linear in the profile, so the comb is assembled tooth by tooth; this keeps
  // each tooth an exact Gaussian instead of a sampled approximation with slow spectral tails.
  auto out = qrf::superposed_slice_state({GaussianProfile{centers[0], s.tooth, 0.0}, s.t_b, mb}, branches, grid, mc, s.t_a);
  for (std::size_t k = 1; k < centers.size(); ++k) {
    const auto tooth =
        qrf::superposed_slice_state({GaussianProfile{centers[k], s.tooth, 0.0}, s.t_b, mb}, branches, grid, mc, s.t_a);
    for (std::size_t i = 0; i < out.payloads.size(); ++i) out.payloads[i][0] = out.payloads[i][0] + tooth.payloads[i][0];
  }

  ScenarioReport r;
  r.scenario = "superposed-slice";
  const double t_c = s.m_a / s.m_c * s.t_a;
  std::vector<std::pair<std::string, rqstate::RapidityState>> layers;
  std::vector<PlotLine> lines;
  for (std::size_t i = 0; i < out.branches.size(); ++i) {
    // Output branches carry the label -omega; the payload support is mapped by Lambda_{-omega}.
    const double w = -out.branches[i].rapidity.value();
    const std::string label = branch_label(source_index(w, s.omega1));
    const auto& st = out.payloads[i][0];
    std::vector<double> xs, ts;
    for (double xk : centers) {
      const auto pred = relkin::boost_point(relkin::Rapidity(-w), {s.t_b, xk});
      const double scale = s.tooth * std::cosh(w);
      const std::array<double, 2> offsets{3.0 * scale, 6.0 * scale};
      const auto pk = fit::locate_light_cone_apex(
          [&](double t, double x) { return std::norm(rqstate::wavefunction(st, {t, x})); }, pred.t, pred.x, offsets,
          3.0 * scale, 97);
      xs.push_back(pk.x);
      ts.push_back(pk.t);
    }
    const auto line = fit::fit_line(xs, ts);
    r.branches.push_back(percent_check(label, w, "ridge slope", std::tanh(w), line.slope, "wave-packet"));
    r.branches.push_back(percent_check(label, w, "ridge intercept", s.t_b / std::cosh(w), line.intercept, "wave-packet"));
    const Complex expected = c * std::exp(I * s.m_c * std::cosh(w) * t_c);
    r.branches.push_back(make_check(label, w, "branch amplitude deviation", 0.0,
                                    std::abs(out.effective_amplitude(i) - expected), 1e-12, false, "closed-form"));
    r.metrics.emplace_back(label + " ridge max residual", line.max_residual);
    for (const auto& warn : st.warnings()) r.warnings.push_back(label + ": " + warn);
    if (plot.nt > 0) {
      layers.emplace_back(label, st);
      const double xa = -edge, xb = edge;
      lines.push_back({label + " predicted", xa, s.t_b / std::cosh(w) + std::tanh(w) * xa, xb,
                       s.t_b / std::cosh(w) + std::tanh(w) * xb});
    }
  }
  if (plot.nt > 0) {
    auto g = sample_states("slices", plot, {s.t_b - 2.0 * edge, s.t_b + 2.0 * edge, -edge, edge}, layers);
    g.overlays = lines;
    r.grids.push_back(std::move(g));
  }
  return r;
}

ScenarioReport run_coordinate_transform(const CoordinateTransform& s) {
  if (s.velocities.empty() || s.velocities.size() > 8) throw std::invalid_argument("need 1 to 8 velocity branches");
  if (s.event_t.size() != s.event_x.size() || s.event_t.size() < 2)
    throw std::invalid_argument("need at least two events with matching t and x lists");
  std::vector<coordqrf::EventCoordinate> events;
  for (std::size_t k = 0; k < s.event_t.size(); ++k) events.push_back({s.event_t[k], s.event_x[k]});
  const auto in = coordqrf::shared_events(coordqrf::equal_weight_lab(s.velocities), "A", "C", events);
  const auto out = coordqrf::transform_frame(in, "C", "A");
  const auto back = coordqrf::transform_frame(out, "A", "C");
  const auto before = coordqrf::distance_expectation(in, 0, 1);
  const auto after = coordqrf::distance_expectation(out, 0, 1);

  ScenarioReport r;
  r.scenario = "coordinate-transform";
  Table tab{"events", {"branch", "v_in", "v_out", "event", "t", "x"}, {}};
  for (std::size_t i = 0; i < s.velocities.size(); ++i) {
    const double v = s.velocities[i];
    const double w = std::atanh(v);
    const std::string label = branch_label(i);
    r.branches.push_back(make_check(label, w, "distance", before[i].signed_value(), after[i].signed_value(), 1e-12,
                                    true, "exact-event"));
    const double g = 1.0 / std::sqrt(1.0 - v * v);
    double worst = 0.0, rt = 0.0;
    for (std::size_t k = 0; k < events.size(); ++k) {
      const auto& e = events[k];
      const auto& o = out.events[i][k];
      worst = std::max({worst, std::abs(o.t - g * (e.t + v * e.x)), std::abs(o.x - g * (e.x + v * e.t))});
      rt = std::max({rt, std::abs(back.events[i][k].t - e.t), std::abs(back.events[i][k].x - e.x)});
      tab.rows.push_back({static_cast<double>(i), v, out.lab[i].v(), static_cast<double>(k), o.t, o.x});
    }
    r.branches.push_back(make_check(label, w, "matrix-oracle deviation", 0.0, worst, 1e-12, false, "exact-event"));
    r.branches.push_back(make_check(label, w, "round-trip deviation", 0.0, rt, 1e-12, false, "exact-event"));
  }
  r.tables.push_back(std::move(tab));
  return r;
}

ScenarioReport run_propagator_table(const PropagatorTable& s) {
  const relkin::Mass m(s.mass);
  const auto grid = s.grid.make();
  ScenarioReport r;
  r.scenario = "propagator-table";
  Table tab{"propagator", {"dt", "dx", "re", "im", "ref_re", "ref_im", "abs_err", "cutoff_dependent", "resolved"}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double dt : s.dts)
    for (double dx : s.dxs) {
      const auto w = rqstate::propagator({{0.0, 0.0}, {dt, dx}, m}, grid);
      const bool lightlike = std::abs(std::abs(dt) - std::abs(dx)) == 0.0;
      Complex ref{nan, nan};
      double err = nan;
      if (!lightlike) {
        ref = propagator_closed_form(dt, dx, m.value());
        err = std::abs(w.value - ref);
      }
      tab.rows.push_back({dt, dx, w.value.real(), w.value.imag(), ref.real(), ref.imag(), err,
                          w.cutoff_dependent ? 1.0 : 0.0, w.resolved ? 1.0 : 0.0});
      char label[64];
      std::snprintf(label, sizeof label, "dt=%g dx=%g", dt, dx);
      if (lightlike || w.cutoff_dependent) {
        r.warnings.push_back(std::string(label) + ": cutoff-dependent (coincident or lightlike); no reference");
        continue;
      }
      if (!w.resolved) {
        r.warnings.push_back(std::string(label) + ": phase not resolved by the rapidity step");
        continue;
      }
      r.branches.push_back(make_check(label, 0.0, "|W - closed form|", 0.0, err, 1e-4, false, "quadrature"));
    }
  r.tables.push_back(std::move(tab));
  return r;
}

}  // namespace lqrf::scenarios
