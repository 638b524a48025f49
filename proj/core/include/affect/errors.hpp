#pragma once

#include <stdexcept>
#include <string>

namespace affect {

/// Malformed or inconsistent input data (files, streams, records).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument or data precondition of an analysis step does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace affect
