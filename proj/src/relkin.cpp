#include "lorentzqrf/relkin.hpp"

#include <stdexcept>
#include <string>

namespace lqrf::relkin {

namespace {
void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::domain_error(std::string(what) + " must be finite");
}
}  // namespace

Mass::Mass(double value) : value_(value) {
  require_finite(value, "mass");
  if (value <= 0.0) throw std::domain_error("mass must be positive, got " + std::to_string(value));
}

Rapidity::Rapidity(double value) : value_(value) { require_finite(value, "rapidity"); }

Rapidity Rapidity::from_velocity(double v) {
  require_finite(v, "velocity");
  if (!(std::abs(v) < 1.0)) throw std::domain_error("velocity must satisfy |v| < 1");
  return Rapidity(std::atanh(v));
}

SpacetimePoint BoostMatrix::apply(SpacetimePoint pt) const noexcept {
  return {m[0][0] * pt.t + m[0][1] * pt.x, m[1][0] * pt.t + m[1][1] * pt.x};
}

TwoMomentum BoostMatrix::apply(TwoMomentum k) const noexcept {
  return {m[0][0] * k.e + m[0][1] * k.p, m[1][0] * k.e + m[1][1] * k.p};
}

BoostMatrix operator*(const BoostMatrix& a, const BoostMatrix& b) noexcept {
  BoostMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
  return r;
}

double energy(double p, Mass m) {
  require_finite(p, "momentum");
  return std::hypot(p, m.value());
}

Rapidity rapidity_of_momentum(double p, Mass m) {
  require_finite(p, "momentum");
  // asinh(p/m) == atanh(p/E) without cancellation at large |p|.
  return Rapidity(std::asinh(p / m.value()));
}

TwoMomentum momentum_of_rapidity(Rapidity theta, Mass m) {
  return {m.value() * std::cosh(theta.value()), m.value() * std::sinh(theta.value())};
}

BoostMatrix boost_matrix(Rapidity alpha) {
  const double c = std::cosh(alpha.value());
  const double s = std::sinh(alpha.value());
  return BoostMatrix{{{{c, -s}, {-s, c}}}};
}

SpacetimePoint boost_point(Rapidity alpha, SpacetimePoint pt) {
  require_finite(pt.t, "t");
  require_finite(pt.x, "x");
  return boost_matrix(alpha).apply(pt);
}

Interval invariant_interval(SpacetimePoint a, SpacetimePoint b) {
  const double dt = b.t - a.t;
  const double dx = b.x - a.x;
  const double s2 = (dt - dx) * (dt + dx);
  if (s2 >= 0.0) return {Interval::Kind::timelike, std::sqrt(s2)};
  return {Interval::Kind::spacelike, std::sqrt(-s2)};
}

}  // namespace lqrf::relkin
