#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "lorentzqrf/rqstate.hpp"

namespace lqrf::qrf {

using relkin::Mass;
using relkin::Rapidity;
using rqstate::RapidityGrid;
using rqstate::RapidityState;

// Time dependence g(t) of a frame system with sharp momenta.
struct TemporalProfile {
  enum class Kind { none, sharp, gaussian };
  Kind kind = Kind::none;
  double t0 = 0.0;
  double sigma = 1.0;
  double weight = 1.0;

  static TemporalProfile none_profile() { return {}; }
  static TemporalProfile sharp(double t0, double weight = 1.0) { return {Kind::sharp, t0, 1.0, weight}; }
  static TemporalProfile gaussian(double t0, double sigma, double weight = 1.0) {
    return {Kind::gaussian, t0, sigma, weight};
  }

  // g~(E) = int dt e^{iEt} g(t); none gives 1.
  Complex transform(double e) const;
  // g'(t) = g(t / s) / s
  TemporalProfile rescaled(double s) const;
};

// Frame component with momentum Lambda_omega k = (m cosh omega, -m sinh omega).
struct SharpBranch {
  Rapidity rapidity;
  Complex amplitude{1.0, 0.0};
  Mass frame_mass{1.0};
};

struct BranchedFrameState {
  std::string perspective;          // observer frame
  Mass perspective_mass{1.0};
  std::string frame_label;          // sharp-branched system
  TemporalProfile frame_profile;
  std::vector<SharpBranch> branches;
  std::vector<std::string> system_labels;
  std::vector<std::vector<RapidityState>> payloads;  // [branch][system]

  void validate() const;
  // c_i g~(m_frame cosh omega_i)
  Complex effective_amplitude(std::size_t i) const;
  double norm_squared() const;
};

// Builds a validated state; branches are sorted by rapidity together with their payloads.
BranchedFrameState make_branched_state(std::string perspective, Mass perspective_mass, std::string frame_label,
                                       std::vector<SharpBranch> branches, std::vector<std::string> system_labels,
                                       std::vector<std::vector<RapidityState>> payloads,
                                       TemporalProfile profile = {});

BranchedFrameState change_frame(const BranchedFrameState& state, std::string_view from, std::string_view to);
BranchedFrameState transformed_evolution(const BranchedFrameState& state, double t_a, double t_b);
// Shifts every branch rapidity by beta and boosts every payload by beta.
BranchedFrameState global_boost(const BranchedFrameState& state, Rapidity beta);

// G_ij = prod_k <p_ik | p_jk> / (|p_ik| |p_jk|)
Eigen::MatrixXcd branch_overlap_matrix(const BranchedFrameState& state);
// tr(rho_frame^2) with rho_ij proportional to a_i conj(a_j) prod_k <p_jk | p_ik>.
double frame_purity(const BranchedFrameState& state);

struct SliceSpec {
  SpatialProfile profile = GaussianProfile{};
  double t_b = 0.0;
  Mass m_b{1.0};
};

// Relative to `frame` (mass m_c): `observer` has sharp momenta (branches, frame_mass m_a) at time t_a
// and `system` lies on the slice t = t_b. Returns the description relative to `observer`.
BranchedFrameState superposed_slice_state(const SliceSpec& slice, const std::vector<SharpBranch>& branches,
                                          const RapidityGrid& grid, Mass m_c, double t_a,
                                          std::string observer = "A", std::string frame = "C",
                                          std::string system = "B");

// ---- cyclic rapidity lattice ----

struct CyclicLattice {
  double step = 1.0;
  std::size_t size = 8;
  std::size_t wrap(long k) const noexcept;
  double rapidity(std::size_t site) const noexcept { return step * static_cast<double>(site); }
  // Site index of rapidity theta; throws if theta is off-lattice.
  std::size_t site_of(double theta) const;
};

// Dense amplitudes over L^n sites; system 0 is the most significant digit.
struct LatticeState {
  CyclicLattice lattice;
  std::vector<std::string> systems;
  std::vector<Complex> amplitudes;

  std::size_t dimension() const;
  std::size_t index(const std::vector<std::size_t>& sites) const;
  std::vector<std::size_t> sites(std::size_t index) const;
  std::size_t position(std::string_view label) const;
  double norm() const;
};

LatticeState lattice_ket(const CyclicLattice& lattice, std::vector<std::string> systems,
                         const std::vector<double>& rapidities);
LatticeState lattice_superposition(const CyclicLattice& lattice, std::vector<std::string> systems,
                                   const std::vector<std::pair<Complex, std::vector<double>>>& terms);
LatticeState lattice_global_boost(const LatticeState& s, long steps);

struct LatticeTwirlState {
  LatticeState state;
};

LatticeTwirlState twirl_lattice(const LatticeState& external);

struct FrameJump {
  std::string frame;
  std::size_t frame_position = 0;
  std::vector<Complex> frame_factor;  // normalized; ideally uniform 1/sqrt(L)
  double fidelity = 0.0;              // |<Omega|frame_factor>|^2
  double residual = 0.0;              // |V T - Omega (x) relational|
  LatticeState relational;
};

FrameJump jump_to_frame(const LatticeTwirlState& t, std::string_view frame);
LatticeTwirlState unjump(const FrameJump& jump);

// |a>_to |b>_B ... -> |-a>_from |b - a>_B ...; the `to` slot is relabelled `from`.
LatticeState change_frame_lattice(const LatticeState& s, std::string_view from, std::string_view to);

}  // namespace lqrf::qrf
