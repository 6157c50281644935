#pragma once

#include <stdexcept>

namespace echosim {

// Malformed input files, bad override keys/values, invalid configuration.
// The command-line front end maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A run that cannot proceed: invalid start pose, calibration that fails to
// converge, and similar. Mapped to exit code 3 by the front end.
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace echosim
