#pragma once

#include <stdexcept>
#include <string>

namespace rdsm {

// Bad parameters, malformed config files, out-of-range settings.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed data files (ensembles, UCR archives).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rdsm
