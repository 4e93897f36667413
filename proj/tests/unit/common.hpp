#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "lorentzqrf/rqstate.hpp"

namespace unit {

using lqrf::Complex;
using lqrf::rqstate::RapidityGrid;
using lqrf::rqstate::RapidityState;

inline const RapidityGrid& grid() {
  static const RapidityGrid g = RapidityGrid::default_grid();
  return g;
}

// One generator per test case, seeded from the case name so cases stay independent.
inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x9e3779b97f4a7c15ULL ^ salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double max_abs_diff(const RapidityState& a, const RapidityState& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a.amplitude(j) - b.amplitude(j)));
  return d;
}

}  // namespace unit
