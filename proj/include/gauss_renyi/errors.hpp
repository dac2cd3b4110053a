#pragma once

#include <stdexcept>
#include <string>

namespace gauss_renyi {

/// A mathematical precondition does not hold for the given input: unphysical
/// covariance, non-faithful reference state, alpha outside (0,1), a
/// non-trace-class E2 operator, and so on.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A factorization or decomposition could not reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or schema violation.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gauss_renyi
