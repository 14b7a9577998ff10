#pragma once
#include <stdexcept>

namespace axsat {

// Invalid or inconsistent user-supplied configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace axsat
