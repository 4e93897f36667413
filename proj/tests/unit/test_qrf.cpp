#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "lorentzqrf/qrf.hpp"
#include "lorentzqrf/spacetime_function.hpp"
#include "oracles/lattice_oracle.hpp"

using namespace lqrf;
using relkin::Mass;
using relkin::Rapidity;
using namespace lqrf::qrf;
using unit::grid;

namespace {

const double ln2 = std::numbers::ln2;
const Gaussian2D kPayload{0.2, -0.3, 0.8, 0.9, 1.4, 0.3};

RapidityState payload() { return rqstate::from_spacetime_function(kPayload, grid(), Mass(1.0)); }

double h(long k) { return static_cast<double>(k) * grid().step(); }

BranchedFrameState two_branch(double w1, double w2, Complex c1 = {0.6, 0.0}, Complex c2 = {0.0, 0.8}) {
  const auto p = payload();
  return make_branched_state("C", Mass(1.0), "A", {{Rapidity(w1), c1, Mass(1.0)}, {Rapidity(w2), c2, Mass(1.0)}},
                             {"B"}, {{p}, {p}}, TemporalProfile::sharp(0.4));
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

oracle::Vec to_vec(const std::vector<Complex>& a) {
  oracle::Vec v(static_cast<long>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<long>(i)] = a[i];
  return v;
}

}  // namespace

TEST_SUITE("qrf") {

TEST_CASE("single branch at rest is a relabeling") {
  const auto p = payload();
  const auto in = make_branched_state("C", Mass(1.0), "A", {{Rapidity(0.0), 1.0, Mass(1.0)}}, {"B"}, {{p}});
  const auto out = change_frame(in, "C", "A");
  CHECK(out.perspective == "A");
  CHECK(out.frame_label == "C");
  REQUIRE(out.branches.size() == 1);
  CHECK(out.branches[0].rapidity.value() == 0.0);
  CHECK(unit::max_abs_diff(out.payloads[0][0], p) == 0.0);
}

TEST_CASE("two branches: payload boosted by minus the branch rapidity") {
  const auto in = two_branch(0.0, ln2);
  const auto out = change_frame(in, "C", "A");
  REQUIRE(out.branches.size() == 2);
  // Labels are negated and re-sorted: {-ln 2, 0}.
  CHECK(out.branches[0].rapidity.value() == doctest::Approx(-ln2));
  CHECK(out.branches[1].rapidity.value() == 0.0);
  CHECK(out.branches[0].amplitude == Complex(0.0, 0.8));
  CHECK(out.branches[1].amplitude == Complex(0.6, 0.0));
  CHECK(unit::max_abs_diff(out.payloads[0][0], rqstate::boost_state(payload(), Rapidity(-ln2))) == 0.0);
  CHECK(unit::max_abs_diff(out.payloads[1][0], payload()) == 0.0);
}

TEST_CASE("change_frame argument errors") {
  const auto in = two_branch(0.0, h(64));
  CHECK_THROWS(change_frame(in, "A", "C"));
  CHECK_THROWS(change_frame(in, "C", "B"));
  CHECK_THROWS(change_frame(in, "C", "Z"));
  CHECK_THROWS(make_branched_state("C", Mass(1.0), "A", {{Rapidity(0.0), 1.0, Mass(1.0)}}, {"B"}, {}));
}

TEST_CASE("norm preservation and round trip on lattice boosts") {
  const auto in = two_branch(h(-40), h(96));
  const auto out = change_frame(in, "C", "A");
  const auto back = change_frame(out, "A", "C");
  CHECK(std::abs(out.norm_squared() - in.norm_squared()) < 1e-12 * in.norm_squared());
  REQUIRE(back.branches.size() == in.branches.size());
  for (std::size_t i = 0; i < in.branches.size(); ++i) {
    CHECK(back.branches[i].rapidity.value() == doctest::Approx(in.branches[i].rapidity.value()).epsilon(1e-15));
    CHECK(std::abs(back.effective_amplitude(i) - in.effective_amplitude(i)) < 1e-10);
    CHECK(unit::max_abs_diff(back.payloads[i][0], in.payloads[i][0]) < 1e-10);
  }
}

TEST_CASE("transformed evolution") {
  const auto p = payload();
  const auto in = make_branched_state("A", Mass(1.0), "C", {{Rapidity(0.0), 1.0, Mass(1.5)}}, {"B"}, {{p}});
  const auto out = transformed_evolution(in, 0.7, 1.3);
  CHECK(std::abs(out.branches[0].amplitude - std::polar(1.0, 1.5 * 0.7)) < 1e-15);
  CHECK(unit::max_abs_diff(out.payloads[0][0], rqstate::evolve(p, 1.3)) < 1e-15);

  const auto two = transformed_evolution(two_branch(h(-60), h(120)), 0.5, 2.0);
  CHECK(std::abs(two.norm_squared() - two_branch(h(-60), h(120)).norm_squared()) < 1e-12);
  // Branch w translates along its own time axis (cosh w, sinh w) t_B.
  const double w = h(120);
  const auto expect = rqstate::translate(p, -std::cosh(w) * 2.0, -std::sinh(w) * 2.0);
  CHECK(unit::max_abs_diff(two.payloads[1][0], expect) < 1e-15);
}

TEST_CASE("branch overlap matrix") {
  const auto same = two_branch(0.0, h(64));
  const auto g1 = branch_overlap_matrix(same);
  CHECK(std::abs(g1(0, 1) - 1.0) < 1e-12);
  CHECK(std::abs(frame_purity(same) - 1.0) < 1e-10);

  const auto lo = rqstate::rapidity_gaussian(grid(), Mass(1.0), -2.0, 0.05);
  const auto hi = rqstate::rapidity_gaussian(grid(), Mass(1.0), 2.0, 0.05);
  const auto disjoint = make_branched_state("C", Mass(1.0), "A",
                                            {{Rapidity(0.0), 1.0, Mass(1.0)}, {Rapidity(1.0), 1.0, Mass(1.0)}},
                                            {"B"}, {{lo}, {hi}});
  const auto g2 = branch_overlap_matrix(disjoint);
  CHECK(std::abs(g2(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(g2(0, 1)) < 1e-10);
  CHECK(frame_purity(disjoint) == doctest::Approx(0.5).epsilon(1e-8));

  // Off-diagonal from the closed-form transform: a'(theta) = a(theta - ln 2).
  const auto out = change_frame(two_branch(0.0, ln2), "C", "A");
  const auto g3 = branch_overlap_matrix(out);
  auto tr = [](double th) { return fourier_transform(kPayload, std::cosh(th), std::sinh(th)); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto re = [&](double th) { return (std::conj(tr(th - ln2)) * tr(th)).real(); };
  auto im = [&](double th) { return (std::conj(tr(th - ln2)) * tr(th)).imag(); };
  auto nn = [&](double th) { return std::norm(tr(th)); };
  const double n = GK::integrate(nn, -12, 12, 15, 1e-14);
  const Complex expect = Complex(GK::integrate(re, -12, 12, 15, 1e-14), GK::integrate(im, -12, 12, 15, 1e-14)) / n;
  CHECK(std::abs(g3(0, 1) - expect) < 1e-6);
  CHECK(frame_purity(out) < 1.0 - 1e-3);
}

TEST_CASE("relational invariance under a global lattice boost") {
  const auto in = two_branch(0.0, h(64));
  const auto boosted = global_boost(in, Rapidity(h(32)));
  const auto a = change_frame(in, "C", "A");
  const auto b = change_frame(boosted, "C", "A");
  REQUIRE(a.branches.size() == b.branches.size());
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    CHECK(b.branches[i].rapidity.value() == doctest::Approx(a.branches[i].rapidity.value() - h(32)));
    CHECK(unit::max_abs_diff(a.payloads[i][0], b.payloads[i][0]) == 0.0);
  }
}

TEST_CASE("superposed slice state") {
  const SliceSpec slice_in{GaussianProfile{0.0, 0.5, 0.0}, 0.5, Mass(1.0)};
  const auto single = superposed_slice_state(slice_in, {{Rapidity(0.0), 1.0, Mass(1.0)}}, grid(), Mass(1.0), 0.0);
  const auto slice = rqstate::from_spacetime_function(Slice{0.5, slice_in.profile, 0.0}, grid(), Mass(1.0));
  REQUIRE(single.branches.size() == 1);
  CHECK(unit::max_abs_diff(single.payloads[0][0], slice) == 0.0);

  const double ma = 1.5, mc = 0.8, ta = 0.7;
  const Complex c1{0.6, 0.0}, c2{0.0, 0.8};
  const auto two = superposed_slice_state(
      slice_in, {{Rapidity(0.0), c1, Mass(ma)}, {Rapidity(h(142)), c2, Mass(ma)}}, grid(), Mass(mc), ta);
  CHECK(two.perspective == "A");
  // Output order is by label -omega: branch 0 is omega = 142 h.
  CHECK(std::abs(two.effective_amplitude(0) - c2 * std::polar(1.0, ma * std::cosh(h(142)) * ta)) < 1e-12);
  CHECK(std::abs(two.effective_amplitude(1) - c1 * std::polar(1.0, ma * ta)) < 1e-12);
}

TEST_CASE("lattice twirl") {
  const CyclicLattice lat{0.25, 8};
  const auto t = twirl_lattice(lattice_ket(lat, {"A"}, {0.0}));
  for (const auto& z : t.state.amplitudes) CHECK(std::abs(z - 1.0 / std::sqrt(8.0)) < 1e-15);

  const auto ext = lattice_superposition(lat, {"A", "B"}, {{0.6, {0.0, 0.5}}, {Complex(0, 0.8), {0.75, 0.25}}});
  const auto tw = twirl_lattice(ext);
  CHECK(max_diff(lattice_global_boost(tw.state, 1).amplitudes, tw.state.amplitudes) == 0.0);
  CHECK(max_diff(lattice_global_boost(tw.state, 5).amplitudes, tw.state.amplitudes) == 0.0);
  const oracle::Vec expect = oracle::twirl(8, 2) * to_vec(ext.amplitudes);
  CHECK(max_diff(tw.state.amplitudes, {expect.data(), expect.data() + expect.size()}) < 1e-15);

  CHECK_THROWS(lattice_ket(lat, {"A"}, {0.1}));
}

TEST_CASE("frame jump on an orbit") {
  const CyclicLattice lat{0.25, 8};
  const double delta = 0.75;
  const auto tw = twirl_lattice(lattice_ket(lat, {"A", "B"}, {0.0, delta}));
  const auto jump = jump_to_frame(tw, "A");
  CHECK(jump.fidelity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jump.residual < 1e-14);
  for (const auto& u : jump.frame_factor) CHECK(std::abs(u - 1.0 / std::sqrt(8.0)) < 1e-14);
  REQUIRE(jump.relational.systems == std::vector<std::string>{"B"});
  for (std::size_t s = 0; s < 8; ++s) CHECK(std::abs(jump.relational.amplitudes[s]) == doctest::Approx(s == 3 ? 1.0 : 0.0));
  CHECK(max_diff(unjump(jump).state.amplitudes, tw.state.amplitudes) < 1e-14);
  CHECK_THROWS(jump_to_frame(tw, "Z"));
}

TEST_CASE("frame branches map onto relative-rapidity branches") {
  const CyclicLattice lat{0.25, 8};
  const Complex c1{0.6, 0.0}, c2{0.0, 0.8};
  // Relative rapidities 1 and 3 sites.
  const auto ext = lattice_superposition(lat, {"A", "B"}, {{c1, {0.0, 0.25}}, {c2, {0.5, 1.25}}});
  const auto jump = jump_to_frame(twirl_lattice(ext), "A");

  const oracle::Vec tv = oracle::twirl(8, 2) * to_vec(ext.amplitudes);
  const oracle::Vec w = oracle::controlled_unshift(8, 1) * tv;
  oracle::Vec chi = oracle::Vec::Zero(8);
  for (long a = 0; a < 8; ++a) chi += w.segment(a * 8, 8) / std::sqrt(8.0);
  CHECK(max_diff(jump.relational.amplitudes, {chi.data(), chi.data() + chi.size()}) < 1e-14);
  CHECK(std::abs(jump.relational.amplitudes[1] - c1) < 1e-14);
  CHECK(std::abs(jump.relational.amplitudes[3] - c2) < 1e-14);
}

TEST_CASE("lattice frame change matches the matrix oracle") {
  const CyclicLattice lat{0.25, 8};
  const auto s = lattice_superposition(lat, {"A", "B"}, {{0.6, {0.25, 0.5}}, {Complex(0, 0.8), {1.0, 0.0}}});
  const auto out = change_frame_lattice(s, "C", "A");
  CHECK(out.systems == std::vector<std::string>{"C", "B"});
  const oracle::Vec expect = oracle::frame_change(8, 1) * to_vec(s.amplitudes);
  CHECK(max_diff(out.amplitudes, {expect.data(), expect.data() + expect.size()}) < 1e-15);
  CHECK(max_diff(change_frame_lattice(out, "A", "C").amplitudes, s.amplitudes) < 1e-15);
  CHECK_THROWS(change_frame_lattice(s, "B", "A"));
}

}  // TEST_SUITE
