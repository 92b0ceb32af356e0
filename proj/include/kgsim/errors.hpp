#pragma once

#include <stdexcept>
#include <string>

namespace kgsim {

// Bad task names, malformed config files, out-of-range parameters.
// The CLI maps this to exit code 64.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures while writing artifacts. CLI exit code 74.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kgsim
