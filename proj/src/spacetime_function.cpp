#include "lorentzqrf/spacetime_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lqrf {

namespace {

constexpr Complex I{0.0, 1.0};
const double kSqrtPi = std::sqrt(std::numbers::pi);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_increasing(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) throw std::invalid_argument(std::string(what) + " needs at least two samples");
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw std::invalid_argument(std::string(what) + " must be strictly increasing");
}

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument(std::string(what) + " must be positive");
}

std::vector<double> trapezoid_weights(const std::vector<double>& xs) {
  std::vector<double> w(xs.size(), 0.0);
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    const double d = 0.5 * (xs[i + 1] - xs[i]);
    w[i] += d;
    w[i + 1] += d;
  }
  return w;
}

}  // namespace

void validate(const SpatialProfile& phi) {
  std::visit(Overloaded{
                 [](const GaussianProfile& g) { require_positive(g.sigma, "profile sigma"); },
                 [](const SampledProfile& s) {
                   require_increasing(s.xs, "profile x-grid");
                   if (s.values.size() != s.xs.size())
                     throw std::invalid_argument("profile sample count does not match x-grid");
                 },
             },
             phi);
}

void validate(const SpacetimeFunction& f) {
  std::visit(Overloaded{
                 [](const Gaussian2D& g) {
                   require_positive(g.sigma_t, "sigma_t");
                   require_positive(g.sigma_x, "sigma_x");
                 },
                 [](const Slice& s) {
                   validate(s.profile);
                   if (!std::isfinite(s.slope) || !std::isfinite(s.t0))
                     throw std::invalid_argument("slice parameters must be finite");
                 },
                 [](const PointEvent&) {},
                 [](const Sampled& s) {
                   require_increasing(s.ts, "t-grid");
                   require_increasing(s.xs, "x-grid");
                   if (s.values.size() != s.ts.size() * s.xs.size())
                     throw std::invalid_argument("sample count does not match t/x grids");
                 },
             },
             f);
}

bool is_normalizable(const SpacetimeFunction& f) { return !std::holds_alternative<PointEvent>(f); }

Complex profile_transform(const SpatialProfile& phi, double q) {
  return std::visit(Overloaded{
                        [q](const GaussianProfile& g) {
                          const double d = q - g.k0;
                          return 2.0 * g.sigma * kSqrtPi * std::exp(-g.sigma * g.sigma * d * d) *
                                 std::exp(-I * q * g.x0);
                        },
                        [q](const SampledProfile& s) {
                          const auto w = trapezoid_weights(s.xs);
                          Complex acc = 0.0;
                          for (size_t i = 0; i < s.xs.size(); ++i)
                            acc += w[i] * std::exp(-I * q * s.xs[i]) * s.values[i];
                          return acc;
                        },
                    },
                    phi);
}

Complex fourier_transform(const SpacetimeFunction& f, double e, double p) {
  return std::visit(
      Overloaded{
          [e, p](const Gaussian2D& g) {
            const double de = e - g.omega0;
            const double dp = p - g.k0;
            const double mag = 4.0 * std::numbers::pi * g.sigma_t * g.sigma_x *
                               std::exp(-g.sigma_t * g.sigma_t * de * de - g.sigma_x * g.sigma_x * dp * dp);
            return mag * std::exp(I * (e * g.t0 - p * g.x0));
          },
          [e, p](const Slice& s) { return std::exp(I * e * s.t0) * profile_transform(s.profile, p - s.slope * e); },
          [e, p](const PointEvent& pe) { return std::exp(I * (e * pe.t0 - p * pe.x0)); },
          [e, p](const Sampled& s) {
            const auto wt = trapezoid_weights(s.ts);
            const auto wx = trapezoid_weights(s.xs);
            std::vector<Complex> ex(s.xs.size());
            for (size_t b = 0; b < s.xs.size(); ++b) ex[b] = wx[b] * std::exp(-I * p * s.xs[b]);
            Complex acc = 0.0;
            for (size_t a = 0; a < s.ts.size(); ++a) {
              Complex row = 0.0;
              const Complex* v = s.values.data() + a * s.xs.size();
              for (size_t b = 0; b < s.xs.size(); ++b) row += ex[b] * v[b];
              acc += wt[a] * std::exp(I * e * s.ts[a]) * row;
            }
            return acc;
          },
      },
      f);
}

SpacetimeFunction shifted(const SpacetimeFunction& f, double dt, double dx) {
  return std::visit(Overloaded{
                        [=](Gaussian2D g) -> SpacetimeFunction {
                          g.t0 += dt;
                          g.x0 += dx;
                          return g;
                        },
                        [=](Slice s) -> SpacetimeFunction {
                          // delta(t - dt - t0 - k (x - dx)) phi(x - dx)
                          s.t0 += dt - s.slope * dx;
                          std::visit(Overloaded{
                                         [dx](GaussianProfile& g) { g.x0 += dx; },
                                         [dx](SampledProfile& sp) {
                                           for (auto& x : sp.xs) x += dx;
                                         },
                                     },
                                     s.profile);
                          return s;
                        },
                        [=](PointEvent pe) -> SpacetimeFunction {
                          pe.t0 += dt;
                          pe.x0 += dx;
                          return pe;
                        },
                        [=](Sampled s) -> SpacetimeFunction {
                          for (auto& t : s.ts) t += dt;
                          for (auto& x : s.xs) x += dx;
                          return s;
                        },
                    },
                    f);
}

std::string kind_name(const SpacetimeFunction& f) {
  static const char* names[] = {"gaussian2d", "slice", "point-event", "sampled"};
  return names[f.index()];
}

}  // namespace lqrf
