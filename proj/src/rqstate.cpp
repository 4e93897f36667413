#include "lorentzqrf/rqstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "lorentzqrf/parallel.hpp"

namespace lqrf::rqstate {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kEdgeBand = 0.05;
constexpr double kEdgeThreshold = 1e-8;

std::shared_ptr<const Kinematics> make_kinematics(const RapidityGrid& g, Mass m) {
  auto k = std::make_shared<Kinematics>();
  const std::size_t n = g.size();
  k->e.resize(n);
  k->p.resize(n);
  k->half_weight.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double th = g.theta(j);
    k->e[j] = m.value() * std::cosh(th);
    k->p[j] = m.value() * std::sinh(th);
    k->half_weight[j] = 0.5 * g.weight(j);
  }
  return k;
}

void require_compatible(const RapidityState& a, const RapidityState& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("rapidity grids differ");
  if (!(a.mass() == b.mass())) throw std::invalid_argument("masses differ");
}

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

std::size_t band_width(std::size_t n) { return static_cast<std::size_t>(std::ceil(kEdgeBand * n)); }

bool touches_edge(std::span<const Complex> a) {
  const double thr = kEdgeThreshold * max_abs(a);
  const std::size_t band = band_width(a.size());
  for (std::size_t j = 0; j < band; ++j)
    if (std::abs(a[j]) > thr || std::abs(a[a.size() - 1 - j]) > thr) return true;
  return false;
}

// Indices whose amplitude can influence a sum at double precision.
std::vector<std::size_t> active_indices(const RapidityState& s) {
  const auto a = s.amplitudes();
  const double thr = 1e-20 * max_abs(a);
  std::vector<std::size_t> idx;
  idx.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    if (std::abs(a[j]) > thr) idx.push_back(j);
  return idx;
}

Complex sum_plane_waves(const RapidityState& s, std::span<const std::size_t> idx, SpacetimePoint pt,
                        bool energy_weighted) {
  const auto& k = s.kinematics();
  const auto a = s.amplitudes();
  Complex acc = 0.0;
  for (std::size_t j : idx) {
    const double phase = -(k.e[j] * pt.t - k.p[j] * pt.x);
    Complex term = k.half_weight[j] * std::polar(1.0, phase) * a[j];
    if (energy_weighted) term *= k.e[j];
    acc += term;
  }
  return acc;
}

// Smooth step: 0 at u <= 0, 1 at u >= 1, C-infinity in between.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

Complex lagrange(std::span<const Complex> a, double u, int order) {
  // order 4: nodes floor(u)-1 .. floor(u)+2; order 6: floor(u)-2 .. floor(u)+3.
  const long base = static_cast<long>(std::floor(u)) - (order / 2 - 1);
  Complex acc = 0.0;
  for (int i = 0; i < order; ++i) {
    const long k = base + i;
    if (k < 0 || k >= static_cast<long>(a.size())) continue;
    double l = 1.0;
    for (int r = 0; r < order; ++r) {
      if (r == i) continue;
      l *= (u - static_cast<double>(base + r)) / static_cast<double>(i - r);
    }
    acc += l * a[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace

RapidityGrid::RapidityGrid(double theta_min, double step, std::size_t count)
    : theta_min_(theta_min), step_(step), count_(count) {
  if (!std::isfinite(theta_min) || !std::isfinite(step) || step <= 0.0)
    throw std::invalid_argument("rapidity grid needs finite theta_min and positive step");
  if (count < 8) throw std::invalid_argument("rapidity grid needs at least 8 nodes");
}

RapidityGrid RapidityGrid::symmetric(double half_width, std::size_t count) {
  if (!(half_width > 0.0) || count < 8) throw std::invalid_argument("invalid symmetric grid");
  const double h = 2.0 * half_width / static_cast<double>(count - 1);
  return RapidityGrid(-h * static_cast<double>(count - 1) / 2.0, h, count);
}

RapidityState::RapidityState(RapidityGrid grid, Mass mass, std::vector<Complex> amplitudes, bool improper)
    : grid_(grid), mass_(mass), amplitudes_(std::move(amplitudes)), improper_(improper) {
  if (amplitudes_.size() != grid_.size()) throw std::invalid_argument("amplitude count does not match grid");
  for (const auto& z : amplitudes_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("amplitudes must be finite");
  kin_ = make_kinematics(grid_, mass_);
}

RapidityState RapidityState::with_amplitudes(std::vector<Complex> amplitudes) const {
  if (amplitudes.size() != amplitudes_.size()) throw std::invalid_argument("amplitude count does not match grid");
  RapidityState r = *this;
  r.amplitudes_ = std::move(amplitudes);
  r.warnings_.clear();
  return r;
}

RapidityState operator+(const RapidityState& a, const RapidityState& b) {
  require_compatible(a, b);
  std::vector<Complex> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.amplitudes()[j] + b.amplitudes()[j];
  RapidityState r = a.with_amplitudes(std::move(v));
  r.set_improper(a.improper() || b.improper());
  return r;
}

RapidityState operator*(Complex c, const RapidityState& s) {
  std::vector<Complex> v(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& z : v) z *= c;
  RapidityState r = s.with_amplitudes(std::move(v));
  r.set_improper(s.improper());
  return r;
}

RapidityState from_spacetime_function(const SpacetimeFunction& f, const RapidityGrid& grid, Mass m) {
  validate(f);
  const RapidityState proto(grid, m, std::vector<Complex>(grid.size()));
  const auto& k = proto.kinematics();
  std::vector<Complex> amp(grid.size());
  std::vector<std::string> notes;

  if (const auto* s = std::get_if<Sampled>(&f)) {
    double peak = 0.0;
    double boundary = 0.0;
    const std::size_t nt = s->ts.size(), nx = s->xs.size();
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t b = 0; b < nx; ++b) {
        const double v = std::abs(s->values[a * nx + b]);
        peak = std::max(peak, v);
        if (a == 0 || b == 0 || a + 1 == nt || b + 1 == nx) boundary = std::max(boundary, v);
      }
    if (boundary > 1e-6 * peak)
      notes.push_back("sampled function does not decay at the sample-grid boundary; transform accuracy reduced");
    parallel_for(grid.size(), [&](std::size_t j) { amp[j] = fourier_transform(f, k.e[j], k.p[j]); });
  } else if (const auto* sl = std::get_if<Slice>(&f); sl && std::holds_alternative<SampledProfile>(sl->profile)) {
    parallel_for(grid.size(), [&](std::size_t j) { amp[j] = fourier_transform(f, k.e[j], k.p[j]); });
  } else {
    for (std::size_t j = 0; j < grid.size(); ++j) amp[j] = fourier_transform(f, k.e[j], k.p[j]);
  }

  RapidityState out(grid, m, std::move(amp), !is_normalizable(f));
  for (auto& n : notes) out.add_warning(std::move(n));
  if (out.improper())
    out.add_warning("point event is not normalizable; state is improper");
  else if (touches_edge(out.amplitudes()))
    out.add_warning("state support reaches the outer 5% of the rapidity grid");
  return out;
}

RapidityState rapidity_gaussian(const RapidityGrid& grid, Mass m, double theta0, double width,
                                SpacetimePoint center) {
  if (!(width > 0.0)) throw std::invalid_argument("rapidity width must be positive");
  std::vector<Complex> amp(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double th = grid.theta(j);
    const double d = th - theta0;
    const double e = m.value() * std::cosh(th), p = m.value() * std::sinh(th);
    amp[j] = std::exp(-d * d / (4.0 * width * width)) * std::polar(1.0, e * center.t - p * center.x);
  }
  return RapidityState(grid, m, std::move(amp));
}

Complex wavefunction(const RapidityState& s, SpacetimePoint pt) {
  const auto idx = active_indices(s);
  return sum_plane_waves(s, idx, pt, false);
}

Complex energy_wavefunction(const RapidityState& s, SpacetimePoint pt) {
  const auto idx = active_indices(s);
  return sum_plane_waves(s, idx, pt, true);
}

std::vector<Complex> wavefunction_grid(const RapidityState& s, std::span<const double> ts,
                                       std::span<const double> xs) {
  const auto idx = active_indices(s);
  std::vector<Complex> out(ts.size() * xs.size());
  parallel_for(ts.size(), [&](std::size_t a) {
    for (std::size_t b = 0; b < xs.size(); ++b) out[a * xs.size() + b] = sum_plane_waves(s, idx, {ts[a], xs[b]}, false);
  });
  return out;
}

Complex equal_time_profile(const RapidityState& s, double t, double x) {
  // phi(x) = (1/2pi) int dp e^{-iEt+ipx} f~ and dp = E dtheta.
  return energy_wavefunction(s, {t, x}) / std::numbers::pi;
}

PropagatorValue propagator(const PropagatorQuery& q, const RapidityGrid& grid, const PropagatorOptions& opts) {
  const double m = q.mass.value();
  const double dt = q.to.t - q.from.t;
  const double dx = q.to.x - q.from.x;
  const double h = grid.step();
  auto dphase = [&](double th) { return m * (dt * std::sinh(th) - dx * std::cosh(th)); };

  double center = 0.0;
  if (std::abs(dt) > std::abs(dx))
    center = std::atanh(dx / dt);
  else if (std::abs(dx) > std::abs(dt))
    center = std::atanh(dt / dx);
  center = std::clamp(center, grid.theta_min(), grid.theta_max());
  const auto jc = static_cast<std::size_t>(std::lround((center - grid.theta_min()) / h));

  PropagatorValue out;
  bool hit_hi = true, hit_lo = true;
  double hi = grid.theta_max(), lo = grid.theta_min();
  for (std::size_t j = jc; j < grid.size(); ++j)
    if (std::abs(dphase(grid.theta(j))) * h > opts.max_phase_step) {
      hi = grid.theta(j);
      hit_hi = false;
      break;
    }
  for (std::size_t j = jc + 1; j-- > 0;)
    if (std::abs(dphase(grid.theta(j))) * h > opts.max_phase_step) {
      lo = grid.theta(j);
      hit_lo = false;
      break;
    }
  out.cutoff_dependent = hit_hi || hit_lo;
  out.window_lo = lo;
  out.window_hi = hi;
  out.resolved = (hi - center) >= opts.taper_width && (center - lo) >= opts.taper_width;

  const double ramp_hi = std::max(hi - opts.taper_width, center);
  const double ramp_lo = std::min(lo + opts.taper_width, center);
  Complex acc = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double th = grid.theta(j);
    if (th > hi || th < lo) continue;
    double taper = 1.0;
    if (!hit_hi && th > ramp_hi) taper *= 1.0 - smooth_step((th - ramp_hi) / (hi - ramp_hi));
    if (!hit_lo && th < ramp_lo) taper *= 1.0 - smooth_step((ramp_lo - th) / (ramp_lo - lo));
    if (taper == 0.0) continue;
    const double phase = -m * (dt * std::cosh(th) - dx * std::sinh(th));
    acc += 0.5 * grid.weight(j) * taper * std::polar(1.0, phase);
  }
  out.value = acc;
  return out;
}

Complex kg_inner(const RapidityState& a, const RapidityState& b) {
  require_compatible(a, b);
  const auto& k = a.kinematics();
  const auto av = a.amplitudes(), bv = b.amplitudes();
  Complex acc = 0.0;
  for (std::size_t j = 0; j < av.size(); ++j) acc += k.half_weight[j] * std::conj(av[j]) * bv[j];
  return acc;
}

double kg_norm(const RapidityState& s) {
  const auto& k = s.kinematics();
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) acc += k.half_weight[j] * std::norm(s.amplitudes()[j]);
  return std::sqrt(acc);
}

RapidityState normalize(const RapidityState& s) {
  if (s.improper()) throw std::domain_error("cannot normalize an improper (point-event) state");
  const double n = kg_norm(s);
  if (!std::isfinite(n) || n <= 0.0) throw std::domain_error("cannot normalize a state with zero or non-finite norm");
  RapidityState r = Complex(1.0 / n) * s;
  for (const auto& w : s.warnings()) r.add_warning(w);
  return r;
}

RapidityState evolve(const RapidityState& s, double dt) { return translate(s, -dt, 0.0); }

RapidityState translate(const RapidityState& s, double dt, double dx) {
  const auto& k = s.kinematics();
  std::vector<Complex> v(s.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = std::polar(1.0, k.e[j] * dt - k.p[j] * dx) * s.amplitudes()[j];
  RapidityState r = s.with_amplitudes(std::move(v));
  r.set_improper(s.improper());
  for (const auto& w : s.warnings()) r.add_warning(w);
  return r;
}

BoostReport boost_state_detailed(const RapidityState& s, Rapidity alpha) {
  const auto a = s.amplitudes();
  const std::size_t n = a.size();
  const double shift = alpha.value() / s.grid().step();
  const double rounded = std::round(shift);
  std::vector<Complex> out(n, 0.0);
  BoostReport rep{s, false, 0.0, false};

  // a'(theta) = a(theta + alpha): node j reads fractional source index j + shift.
  if (std::abs(shift - rounded) <= 1e-9 * std::max(1.0, std::abs(shift))) {
    rep.exact_shift = true;
    const long ks = static_cast<long>(rounded);
    for (std::size_t j = 0; j < n; ++j) {
      const long src = static_cast<long>(j) + ks;
      if (src >= 0 && src < static_cast<long>(n)) out[j] = a[static_cast<std::size_t>(src)];
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = static_cast<double>(j) + shift;
      if (u < -3.0 || u > static_cast<double>(n) + 2.0) continue;
      out[j] = lagrange(a, u, 4);
      rep.interpolation_residual = std::max(rep.interpolation_residual, std::abs(out[j] - lagrange(a, u, 6)));
    }
  }

  const double thr = kEdgeThreshold * max_abs(a);
  const double band = static_cast<double>(band_width(n));
  for (std::size_t k = 0; k < n && !rep.truncated; ++k) {
    const double dest = static_cast<double>(k) - shift;
    if ((dest < band || dest > static_cast<double>(n - 1) - band) && std::abs(a[k]) > thr) rep.truncated = true;
  }

  rep.state = s.with_amplitudes(std::move(out));
  rep.state.set_improper(s.improper());
  for (const auto& w : s.warnings()) rep.state.add_warning(w);
  if (rep.truncated) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "boost by %.6g moves support within 5%% of the rapidity grid edge", alpha.value());
    rep.state.add_warning(buf);
  }
  return rep;
}

RapidityState boost_state(const RapidityState& s, Rapidity alpha) { return boost_state_detailed(s, alpha).state; }

double kg_equation_residual(const RapidityState& s, std::span<const SpacetimePoint> test_points) {
  const auto& k = s.kinematics();
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double w = k.half_weight[j] * std::norm(s.amplitudes()[j]);
    num += w * k.e[j] * k.e[j];
    den += w;
  }
  if (den <= 0.0) return 0.0;
  // Spectra of narrow packets have heavy energy tails, so the step sits well below 1/E_rms; at
  // 0.003/E_rms truncation O(delta^6) and rounding O(eps/delta) are of similar size.
  const double delta = 0.003 / std::sqrt(num / den);
  // Seven-point central difference.
  static constexpr double c[] = {-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0};
  const auto idx = active_indices(s);
  double worst = 0.0;
  for (const auto& pt : test_points) {
    Complex d = 0.0;
    for (int i = 0; i < 7; ++i) {
      if (c[i] == 0.0) continue;
      d += c[i] * sum_plane_waves(s, idx, {pt.t + (i - 3) * delta, pt.x}, false);
    }
    d /= 60.0 * delta;
    worst = std::max(worst, std::abs(I * d - sum_plane_waves(s, idx, pt, true)));
  }
  return worst;
}

}  // namespace lqrf::rqstate
