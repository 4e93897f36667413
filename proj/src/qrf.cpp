#include "lorentzqrf/qrf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "lorentzqrf/parallel.hpp"

namespace lqrf::qrf {

namespace {

constexpr Complex I{0.0, 1.0};

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

Complex TemporalProfile::transform(double e) const {
  switch (kind) {
    case Kind::none:
      return 1.0;
    case Kind::sharp:
      return weight * std::exp(I * e * t0);
    case Kind::gaussian:
      return weight * 2.0 * sigma * std::sqrt(std::numbers::pi) * std::exp(-sigma * sigma * e * e) *
             std::exp(I * e * t0);
  }
  return 1.0;
}

TemporalProfile TemporalProfile::rescaled(double s) const {
  TemporalProfile r = *this;
  r.t0 = s * t0;
  if (kind == Kind::gaussian) {
    r.sigma = s * sigma;
    r.weight = weight / s;
  }
  return r;
}

void BranchedFrameState::validate() const {
  if (branches.empty()) fail("branched state needs at least one branch");
  if (payloads.size() != branches.size()) fail("payload list count does not match branch count");
  for (const auto& row : payloads)
    if (row.size() != system_labels.size()) fail("payload count must equal the number of systems in every branch");
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (!std::isfinite(std::abs(branches[i].amplitude))) fail("branch amplitude must be finite");
    if (!(branches[i].frame_mass == branches[0].frame_mass)) fail("branches must share the frame mass");
    if (i > 0 && !(branches[i - 1].rapidity.value() < branches[i].rapidity.value()))
      fail("branch rapidities must be distinct and ascending");
  }
  for (std::size_t k = 0; k < system_labels.size(); ++k)
    for (std::size_t i = 1; i < branches.size(); ++i)
      if (!payloads[i][k].compatible(payloads[0][k])) fail("payload grids differ across branches");
  if (std::find(system_labels.begin(), system_labels.end(), frame_label) != system_labels.end() ||
      frame_label == perspective)
    fail("frame label must be distinct from the perspective and payload systems");
}

Complex BranchedFrameState::effective_amplitude(std::size_t i) const {
  const auto& b = branches.at(i);
  return b.amplitude * frame_profile.transform(b.frame_mass.value() * std::cosh(b.rapidity.value()));
}

double BranchedFrameState::norm_squared() const {
  double total = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    double n = std::norm(effective_amplitude(i));
    for (const auto& p : payloads[i]) {
      const double k = rqstate::kg_norm(p);
      n *= k * k;
    }
    total += n;
  }
  return total;
}

BranchedFrameState make_branched_state(std::string perspective, Mass perspective_mass, std::string frame_label,
                                       std::vector<SharpBranch> branches, std::vector<std::string> system_labels,
                                       std::vector<std::vector<RapidityState>> payloads, TemporalProfile profile) {
  if (payloads.size() != branches.size()) fail("payload list count does not match branch count");
  std::vector<std::size_t> order(branches.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return branches[a].rapidity.value() < branches[b].rapidity.value();
  });
  BranchedFrameState s{std::move(perspective), perspective_mass, std::move(frame_label), profile, {}, std::move(system_labels), {}};
  for (std::size_t i : order) {
    s.branches.push_back(branches[i]);
    s.payloads.push_back(std::move(payloads[i]));
  }
  s.validate();
  return s;
}

BranchedFrameState change_frame(const BranchedFrameState& state, std::string_view from, std::string_view to) {
  state.validate();
  if (from != state.perspective)
    fail("change_frame: '" + std::string(from) + "' is not the current perspective '" + state.perspective + "'");
  if (to != state.frame_label) {
    if (std::find(state.system_labels.begin(), state.system_labels.end(), to) != state.system_labels.end())
      fail("change_frame: system '" + std::string(to) + "' is grid-valued, not sharp-branched");
    fail("change_frame: unknown frame '" + std::string(to) + "'");
  }
  const Mass m_from = state.perspective_mass;
  const Mass m_to = state.branches.front().frame_mass;

  BranchedFrameState out;
  out.perspective = state.frame_label;
  out.perspective_mass = m_to;
  out.frame_label = state.perspective;
  out.system_labels = state.system_labels;
  out.frame_profile = state.frame_profile.rescaled(m_to.value() / m_from.value());

  const std::size_t n = state.branches.size();
  std::vector<std::vector<RapidityState>> payloads(n);
  parallel_for(n, [&](std::size_t i) {
    const Rapidity w = state.branches[i].rapidity;
    for (const auto& p : state.payloads[i]) payloads[i].push_back(rqstate::boost_state(p, -w));
  });
  // Negated labels reverse the rapidity order.
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = n - 1 - r;
    out.branches.push_back({-state.branches[i].rapidity, state.branches[i].amplitude, m_from});
    out.payloads.push_back(std::move(payloads[i]));
  }
  out.validate();
  return out;
}

BranchedFrameState transformed_evolution(const BranchedFrameState& state, double t_a, double t_b) {
  state.validate();
  BranchedFrameState out = state;
  parallel_for(state.branches.size(), [&](std::size_t i) {
    auto& b = out.branches[i];
    const double w = b.rapidity.value();
    b.amplitude *= std::polar(1.0, b.frame_mass.value() * std::cosh(w) * t_a);
    // U_B at the point Lambda_{-w}(t_b, 0) = (cosh w t_b, sinh w t_b).
    const double tt = std::cosh(w) * t_b, xx = std::sinh(w) * t_b;
    for (auto& p : out.payloads[i]) p = rqstate::translate(p, -tt, -xx);
  });
  return out;
}

BranchedFrameState global_boost(const BranchedFrameState& state, Rapidity beta) {
  BranchedFrameState out = state;
  for (std::size_t i = 0; i < out.branches.size(); ++i) {
    out.branches[i].rapidity = out.branches[i].rapidity + beta;
    for (auto& p : out.payloads[i]) p = rqstate::boost_state(p, beta);
  }
  return out;
}

Eigen::MatrixXcd branch_overlap_matrix(const BranchedFrameState& state) {
  state.validate();
  const std::size_t n = state.branches.size();
  Eigen::MatrixXcd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex prod = 1.0;
      for (std::size_t k = 0; k < state.system_labels.size(); ++k) {
        const auto& a = state.payloads[i][k];
        const auto& b = state.payloads[j][k];
        prod *= rqstate::kg_inner(a, b) / (rqstate::kg_norm(a) * rqstate::kg_norm(b));
      }
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = prod;
    }
  return g;
}

double frame_purity(const BranchedFrameState& state) {
  const Eigen::MatrixXcd g = branch_overlap_matrix(state);
  const auto n = g.rows();
  Eigen::VectorXcd a(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double nk = 1.0;
    for (const auto& p : state.payloads[static_cast<std::size_t>(i)]) nk *= rqstate::kg_norm(p);
    a(i) = state.effective_amplitude(static_cast<std::size_t>(i)) * nk;
  }
  Eigen::MatrixXcd rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = a(i) * std::conj(a(j)) * g(j, i);
  rho /= rho.trace().real();
  return (rho * rho).trace().real();
}

BranchedFrameState superposed_slice_state(const SliceSpec& slice, const std::vector<SharpBranch>& branches,
                                          const RapidityGrid& grid, Mass m_c, double t_a,
                                          std::string observer, std::string frame, std::string system) {
  validate(slice.profile);
  const RapidityState fb =
      rqstate::from_spacetime_function(Slice{slice.t_b, slice.profile, 0.0}, grid, slice.m_b);
  std::vector<std::vector<RapidityState>> payloads(branches.size(), std::vector<RapidityState>{fb});
  // Perspective `frame` sees `observer` at sharp time t_a; change_frame rescales t_a by the mass ratio.
  const auto input = make_branched_state(frame, m_c, observer, branches, {system}, std::move(payloads),
                                         TemporalProfile::sharp(t_a));
  return change_frame(input, frame, observer);
}

// ---- lattice ----

std::size_t CyclicLattice::wrap(long k) const noexcept {
  const long l = static_cast<long>(size);
  return static_cast<std::size_t>(((k % l) + l) % l);
}

std::size_t CyclicLattice::site_of(double theta) const {
  const double u = theta / step;
  const double r = std::round(u);
  if (std::abs(u - r) > 1e-9 * std::max(1.0, std::abs(u)))
    fail("rapidity " + std::to_string(theta) + " is off the lattice");
  return wrap(static_cast<long>(r));
}

std::size_t LatticeState::dimension() const {
  std::size_t d = 1;
  for (std::size_t k = 0; k < systems.size(); ++k) d *= lattice.size;
  return d;
}

std::size_t LatticeState::index(const std::vector<std::size_t>& s) const {
  std::size_t idx = 0;
  for (std::size_t v : s) idx = idx * lattice.size + v;
  return idx;
}

std::vector<std::size_t> LatticeState::sites(std::size_t idx) const {
  std::vector<std::size_t> s(systems.size());
  for (std::size_t k = systems.size(); k-- > 0;) {
    s[k] = idx % lattice.size;
    idx /= lattice.size;
  }
  return s;
}

std::size_t LatticeState::position(std::string_view label) const {
  const auto it = std::find(systems.begin(), systems.end(), label);
  if (it == systems.end()) fail("system '" + std::string(label) + "' is not present");
  return static_cast<std::size_t>(it - systems.begin());
}

double LatticeState::norm() const {
  double n = 0.0;
  for (const auto& z : amplitudes) n += std::norm(z);
  return std::sqrt(n);
}

LatticeState lattice_superposition(const CyclicLattice& lattice, std::vector<std::string> systems,
                                   const std::vector<std::pair<Complex, std::vector<double>>>& terms) {
  if (lattice.size < 2 || !(lattice.step > 0.0)) fail("lattice needs at least two sites and a positive step");
  LatticeState s{lattice, std::move(systems), {}};
  s.amplitudes.assign(s.dimension(), 0.0);
  for (const auto& [c, raps] : terms) {
    if (raps.size() != s.systems.size()) fail("each term needs one rapidity per system");
    std::vector<std::size_t> sites;
    for (double r : raps) sites.push_back(lattice.site_of(r));
    s.amplitudes[s.index(sites)] += c;
  }
  return s;
}

LatticeState lattice_ket(const CyclicLattice& lattice, std::vector<std::string> systems,
                         const std::vector<double>& rapidities) {
  return lattice_superposition(lattice, std::move(systems), {{1.0, rapidities}});
}

LatticeState lattice_global_boost(const LatticeState& s, long steps) {
  LatticeState out = s;
  std::fill(out.amplitudes.begin(), out.amplitudes.end(), Complex{});
  for (std::size_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    if (s.amplitudes[idx] == Complex{}) continue;
    auto sites = s.sites(idx);
    for (auto& v : sites) v = s.lattice.wrap(static_cast<long>(v) + steps);
    out.amplitudes[out.index(sites)] += s.amplitudes[idx];
  }
  return out;
}

LatticeTwirlState twirl_lattice(const LatticeState& external) {
  LatticeState t = external;
  std::fill(t.amplitudes.begin(), t.amplitudes.end(), Complex{});
  const double w = 1.0 / std::sqrt(static_cast<double>(external.lattice.size));
  for (std::size_t s = 0; s < external.lattice.size; ++s) {
    const LatticeState shifted = lattice_global_boost(external, static_cast<long>(s));
    for (std::size_t i = 0; i < t.amplitudes.size(); ++i) t.amplitudes[i] += w * shifted.amplitudes[i];
  }
  return {std::move(t)};
}

namespace {

// Moves system `pos` to the front; returns the permuted state.
LatticeState frame_first(const LatticeState& s, std::size_t pos) {
  LatticeState out = s;
  std::rotate(out.systems.begin(), out.systems.begin() + static_cast<long>(pos),
              out.systems.begin() + static_cast<long>(pos) + 1);
  for (std::size_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    auto sites = s.sites(idx);
    std::rotate(sites.begin(), sites.begin() + static_cast<long>(pos), sites.begin() + static_cast<long>(pos) + 1);
    out.amplitudes[out.index(sites)] = s.amplitudes[idx];
  }
  return out;
}

LatticeState frame_back(const LatticeState& s, std::size_t pos) {
  LatticeState out = s;
  std::rotate(out.systems.begin(), out.systems.begin() + 1, out.systems.begin() + static_cast<long>(pos) + 1);
  for (std::size_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    auto sites = s.sites(idx);
    std::rotate(sites.begin(), sites.begin() + 1, sites.begin() + static_cast<long>(pos) + 1);
    out.amplitudes[out.index(sites)] = s.amplitudes[idx];
  }
  return out;
}

}  // namespace

FrameJump jump_to_frame(const LatticeTwirlState& t, std::string_view frame) {
  const std::size_t pos = t.state.position(frame);
  const LatticeState s = frame_first(t.state, pos);
  const std::size_t l = s.lattice.size;
  const std::size_t rest_dim = s.dimension() / l;
  const std::size_t nrest = s.systems.size() - 1;

  // W(a, r) = T(a, r + a): the frame-controlled boost by -a on every other system.
  std::vector<Complex> w(s.amplitudes.size());
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t r = 0; r < rest_dim; ++r) {
      std::size_t src = 0, rr = r, mul = 1;
      for (std::size_t k = 0; k < nrest; ++k) {
        const std::size_t digit = rr % l;
        rr /= l;
        src += s.lattice.wrap(static_cast<long>(digit + a)) * mul;
        mul *= l;
      }
      w[a * rest_dim + r] = s.amplitudes[a * rest_dim + src];
    }

  FrameJump out;
  out.frame = std::string(frame);
  out.frame_position = pos;
  out.relational = LatticeState{s.lattice, {s.systems.begin() + 1, s.systems.end()}, std::vector<Complex>(rest_dim)};
  const double inv = 1.0 / std::sqrt(static_cast<double>(l));
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t r = 0; r < rest_dim; ++r) out.relational.amplitudes[r] += inv * w[a * rest_dim + r];

  double wn = 0.0, chi = 0.0, res = 0.0;
  for (const auto& z : w) wn += std::norm(z);
  for (const auto& z : out.relational.amplitudes) chi += std::norm(z);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t r = 0; r < rest_dim; ++r) res += std::norm(w[a * rest_dim + r] - inv * out.relational.amplitudes[r]);
  out.residual = std::sqrt(res);
  out.fidelity = wn > 0.0 ? chi / wn : 0.0;

  out.frame_factor.assign(l, 0.0);
  const double chin = std::sqrt(chi);
  double un = 0.0;
  for (std::size_t a = 0; a < l; ++a) {
    Complex u = 0.0;
    for (std::size_t r = 0; r < rest_dim; ++r)
      u += std::conj(out.relational.amplitudes[r]) * w[a * rest_dim + r];
    out.frame_factor[a] = chin > 0.0 ? u / chin : 0.0;
    un += std::norm(out.frame_factor[a]);
  }
  if (un > 0.0)
    for (auto& z : out.frame_factor) z /= std::sqrt(un);
  return out;
}

LatticeTwirlState unjump(const FrameJump& jump) {
  const std::size_t l = jump.relational.lattice.size;
  if (jump.frame_factor.size() != l) fail("frame factor size does not match the lattice");
  const std::size_t rest_dim = jump.relational.amplitudes.size();
  const std::size_t nrest = jump.relational.systems.size();

  LatticeState s{jump.relational.lattice, {}, {}};
  s.systems.push_back(jump.frame);
  s.systems.insert(s.systems.end(), jump.relational.systems.begin(), jump.relational.systems.end());
  s.amplitudes.assign(l * rest_dim, 0.0);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t r = 0; r < rest_dim; ++r) {
      std::size_t dst = 0, rr = r, mul = 1;
      for (std::size_t k = 0; k < nrest; ++k) {
        const std::size_t digit = rr % l;
        rr /= l;
        dst += s.lattice.wrap(static_cast<long>(digit + a)) * mul;
        mul *= l;
      }
      s.amplitudes[a * rest_dim + dst] = jump.frame_factor[a] * jump.relational.amplitudes[r];
    }
  return {frame_back(s, jump.frame_position)};
}

LatticeState change_frame_lattice(const LatticeState& s, std::string_view from, std::string_view to) {
  if (std::find(s.systems.begin(), s.systems.end(), from) != s.systems.end())
    fail("perspective '" + std::string(from) + "' must not appear among the described systems");
  const std::size_t pos = s.position(to);
  LatticeState out = s;
  out.systems[pos] = std::string(from);
  std::fill(out.amplitudes.begin(), out.amplitudes.end(), Complex{});
  for (std::size_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    if (s.amplitudes[idx] == Complex{}) continue;
    auto sites = s.sites(idx);
    const long a = static_cast<long>(sites[pos]);
    for (std::size_t k = 0; k < sites.size(); ++k)
      sites[k] = k == pos ? s.lattice.wrap(-a) : s.lattice.wrap(static_cast<long>(sites[k]) - a);
    out.amplitudes[out.index(sites)] = s.amplitudes[idx];
  }
  return out;
}

}  // namespace lqrf::qrf
