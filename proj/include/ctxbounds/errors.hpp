#pragma once

#include <stdexcept>
#include <string>

namespace ctxbounds {

/// Malformed or inconsistent input document. `location` is a JSON-pointer-like
/// path to the offending element (e.g. "/contexts/3/1").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& message)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// A search or iteration budget was exhausted before an exact answer was found.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operators of different dimensions were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ctxbounds
