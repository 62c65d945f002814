#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbiteq {

// Base class for failures that are a property of the input or of a resource
// limit rather than a programming error. The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A difference scan reached its cap without producing enough witnesses.
class BudgetExhausted : public DomainError {
 public:
  using DomainError::DomainError;
};

// A combinatorial size or degree limit was exceeded.
class CapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

// The automorphism search tree grew past its node budget.
class NodeBudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

// No monochromatic index set of the required size exists among the candidates.
class ExtractionFailed : public DomainError {
 public:
  ExtractionFailed(const std::string& what, std::size_t largest)
      : DomainError(what), largest_found(largest) {}
  std::size_t largest_found;
};

// A comparability probe could not decide the relation between two targets.
class ComparabilityUnknown : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace orbiteq
