#ifndef OUTERLAB_ERRORS_HPP
#define OUTERLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace outerlab {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or invalid input: bad tables, non-subgroups, parse failures,
/// rejected HNN data. Maps to CLI exit code 2.
class InputError : public Error {
public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

/// A configured size cap was exceeded. Maps to CLI exit code 3.
class CapError : public Error {
public:
  explicit CapError(const std::string& msg) : Error(msg) {}
};

/// An identity that is mathematically guaranteed failed to hold at runtime.
/// These are bug traps: they indicate a defect in this implementation, never
/// a property of the input.
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

} // namespace outerlab

#endif
