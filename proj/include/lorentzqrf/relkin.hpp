#pragma once

#include <array>
#include <cmath>

namespace lqrf::relkin {

class Mass {
 public:
  explicit Mass(double value);
  double value() const noexcept { return value_; }
  friend bool operator==(const Mass&, const Mass&) = default;

 private:
  double value_;
};

class Rapidity {
 public:
  constexpr Rapidity() noexcept = default;
  explicit Rapidity(double value);

  static Rapidity from_velocity(double v);

  double value() const noexcept { return value_; }
  double velocity() const noexcept { return std::tanh(value_); }
  double gamma() const noexcept { return std::cosh(value_); }

  Rapidity operator-() const noexcept { return Rapidity(-value_, Unchecked{}); }
  friend Rapidity operator+(Rapidity a, Rapidity b) { return Rapidity(a.value_ + b.value_); }
  friend Rapidity operator-(Rapidity a, Rapidity b) { return Rapidity(a.value_ - b.value_); }
  friend bool operator==(const Rapidity&, const Rapidity&) = default;

 private:
  struct Unchecked {};
  constexpr Rapidity(double v, Unchecked) noexcept : value_(v) {}
  double value_ = 0.0;
};

struct TwoMomentum {
  double e = 0.0;
  double p = 0.0;
  double invariant_mass_squared() const noexcept { return (e - p) * (e + p); }
};

struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

// Row-major: (t', x') = m * (t, x).
struct BoostMatrix {
  std::array<std::array<double, 2>, 2> m{};

  double determinant() const noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  SpacetimePoint apply(SpacetimePoint pt) const noexcept;
  TwoMomentum apply(TwoMomentum k) const noexcept;
  friend BoostMatrix operator*(const BoostMatrix& a, const BoostMatrix& b) noexcept;
};

struct Interval {
  enum class Kind { timelike, spacelike };
  Kind kind = Kind::timelike;
  double magnitude = 0.0;  // >= 0; lightlike pairs are timelike with magnitude 0

  bool timelike() const noexcept { return kind == Kind::timelike; }
  // Signed proxy: +s for timelike, -s for spacelike.
  double signed_value() const noexcept { return timelike() ? magnitude : -magnitude; }
};

double energy(double p, Mass m);
Rapidity rapidity_of_momentum(double p, Mass m);
TwoMomentum momentum_of_rapidity(Rapidity theta, Mass m);
BoostMatrix boost_matrix(Rapidity alpha);
SpacetimePoint boost_point(Rapidity alpha, SpacetimePoint pt);
Interval invariant_interval(SpacetimePoint a, SpacetimePoint b);

}  // namespace lqrf::relkin
