#ifndef CRN_ERRORS_H_
#define CRN_ERRORS_H_

#include <stdexcept>

namespace crn {

// Shape or parameter mismatch between objects that must agree.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability vector with negative, non-finite, or zero total mass.
class InvalidDistribution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Statistics requested from too few samples.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An illegal game move.
class RuleViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Planning requested from a state that has no legal actions.
class TerminalStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed text input (MDP files, mortality tables, board maps, game logs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crn

#endif  // CRN_ERRORS_H_
