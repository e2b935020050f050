#pragma once

#include <stdexcept>
#include <string>

namespace frachardy {

// Parameters outside the admissible set of an operation. The CLI maps this
// to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

}  // namespace frachardy
