#pragma once

#include <stdexcept>
#include <string>

namespace gasdyn {

// Bad or inconsistent user input (config files, parameter structs).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to converge or produced non-finite values.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates a structural hypothesis of the scenario being run
// (e.g. compressive data passed to a shock-free construction, non-monotone
// entropy passed to the wave-character checker).
struct hypothesis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gasdyn
