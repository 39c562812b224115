#pragma once

#include <stdexcept>
#include <string>

namespace guesswork {

// Input that violates a type invariant (bad sums, negative entries, label
// mismatches, unparsable tokens).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed input outside an operation's mathematical contract.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace guesswork
