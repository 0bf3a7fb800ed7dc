#pragma once

#include <stdexcept>

namespace majdyn {

// Validation errors (bad arguments, incompatible operands).
struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonDifferentiablePhi : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonIncreasingPhi : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PositiveGamma : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runtime failures raised while evolving or sampling a system.
struct StabilityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeDensity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateOrbit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace majdyn
