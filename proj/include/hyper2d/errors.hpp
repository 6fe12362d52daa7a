#pragma once

#include <stdexcept>
#include <string>

namespace hyper2d {

/// Bad user input: unknown flags, invalid parameter combinations,
/// stale caches.  CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical procedure failed to converge at the requested tolerance.
/// CLI maps this to exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hyper2d
