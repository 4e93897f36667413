#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace lqrf {

using Complex = std::complex<double>;

// phi(x) = exp(-(x-x0)^2 / (4 sigma^2) + i k0 (x-x0))
struct GaussianProfile {
  double x0 = 0.0;
  double sigma = 1.0;
  double k0 = 0.0;
};

struct SampledProfile {
  std::vector<double> xs;
  std::vector<Complex> values;
};

using SpatialProfile = std::variant<GaussianProfile, SampledProfile>;

// f = exp(-(t-t0)^2/(4 st^2) - (x-x0)^2/(4 sx^2) - i w0 (t-t0) + i k0 (x-x0))
struct Gaussian2D {
  double t0 = 0.0;
  double x0 = 0.0;
  double sigma_t = 1.0;
  double sigma_x = 1.0;
  double omega0 = 0.0;
  double k0 = 0.0;
};

// f = delta(t - t0 - slope * x) phi(x). slope = 0 is an equal-time slice.
struct Slice {
  double t0 = 0.0;
  SpatialProfile profile = GaussianProfile{};
  double slope = 0.0;
};

// f = delta(t - t0) delta(x - x0); not normalizable.
struct PointEvent {
  double t0 = 0.0;
  double x0 = 0.0;
};

// values are row-major with index it * xs.size() + ix.
struct Sampled {
  std::vector<double> ts;
  std::vector<double> xs;
  std::vector<Complex> values;
};

using SpacetimeFunction = std::variant<Gaussian2D, Slice, PointEvent, Sampled>;

void validate(const SpatialProfile& phi);
void validate(const SpacetimeFunction& f);

bool is_normalizable(const SpacetimeFunction& f);

// phi~(q) = int dx e^{-iqx} phi(x)
Complex profile_transform(const SpatialProfile& phi, double q);

// f~(E, p) = int dt dx e^{iEt - ipx} f(t, x). Sampled uses the trapezoid rule.
Complex fourier_transform(const SpacetimeFunction& f, double e, double p);

// f(t - dt, x - dx)
SpacetimeFunction shifted(const SpacetimeFunction& f, double dt, double dx);

std::string kind_name(const SpacetimeFunction& f);

}  // namespace lqrf
