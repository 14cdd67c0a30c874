#ifndef BOBURL_ERRORS_HPP
#define BOBURL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace boburl {

// Bad inputs and bad files: unreadable paths, schema violations, malformed
// numbers, invalid argument values. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Shape contract violations between arrays, traces, models, and optimizer
// state. Maps to CLI exit code 2.
class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values where finite math is required (diverged training,
// inf/nan gradients). Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace boburl

#endif  // BOBURL_ERRORS_HPP
