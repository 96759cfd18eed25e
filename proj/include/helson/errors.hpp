#pragma once

#include <stdexcept>
#include <string>

namespace helson {

/// Argument outside the domain of a closed-form function (t <= 1 for a
/// Helson kernel, x <= 0 for a Hankel kernel, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Violated precondition on shapes, sizes or configuration.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative or adaptive computation did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace helson
