#pragma once

#include <stdexcept>
#include <string>

namespace cyclew {

// Argument outside the mathematical domain of an operation (k = 0, t >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured size cap was exceeded (enumeration cap, table n_max, series cap).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An iterative method failed to converge or produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or input data (CLI flags, cache files, empty batches).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cyclew
