#pragma once

#include <stdexcept>
#include <string>

namespace mcbayes {

/// Invalid user input: bad config fields, out-of-domain parameters, malformed files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The model cannot support the requested computation: a non-ergodic
/// transition matrix, or a posterior with zero mass on every grid point.
class DegenerateModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonErgodicError : public DegenerateModelError {
 public:
  using DegenerateModelError::DegenerateModelError;
};

class DegeneratePosteriorError : public DegenerateModelError {
 public:
  using DegenerateModelError::DegenerateModelError;
};

/// An iterative numerical routine stopped before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcbayes
