#ifndef TFACT_ERRORS_HPP
#define TFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfact {

/// Bad caller input: degree mismatch, out-of-range point, element outside the group.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A shipped or user data file is malformed or fails its own assertions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration / index bound would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed (e.g. a non-exact division while counting).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tfact

#endif  // TFACT_ERRORS_HPP
