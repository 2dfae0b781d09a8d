#pragma once

#include <stdexcept>
#include <string>

namespace trigbound {

// Malformed input: wrong dimension, non-real data where real data is
// required, non-finite values.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Inputs are well formed but violate a mathematical requirement of the
// operation, e.g. too few samples for the identity being used.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

// A computation could not proceed: singular Gram matrix, infeasible
// barrier, optimizer failure.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline const char* version() { return TRIGBOUND_VERSION; }

}  // namespace trigbound
