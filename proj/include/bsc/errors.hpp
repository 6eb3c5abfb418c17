#pragma once

#include <stdexcept>
#include <string>

namespace bsc {

/// Argument outside the mathematical domain of an operation (|a| >= 1, angle outside [0, pi], ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Inconsistent rule or integrand configuration (validity condition, unmatched conjugates, ...).
class ConfigurationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative procedure ran out of budget before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Coincident coordinates where a ratio of alternants is undefined.
class DegenerateInputError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class SingularityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

} // namespace bsc
