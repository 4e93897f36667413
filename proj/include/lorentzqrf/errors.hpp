#pragma once

#include <stdexcept>
#include <string>

namespace lqrf {

// Estimator did not converge or the data do not support the model.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid scenario or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lqrf
