#pragma once

#include <stdexcept>
#include <string>

namespace grainsched {

// Raised for invalid user input: scenario files, presets, CLI parameters,
// malformed job definitions. Maps to process exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal invariant is violated (over-committed node, double
// release, broken bookkeeping). Maps to process exit code 3.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace grainsched
