#pragma once

#include <stdexcept>
#include <string>

namespace edgerec {

/// Input data violates a documented precondition (bad ids, negative activity,
/// mismatched dimensions, malformed files).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numeric routine could not produce a result (non-finite values, failed
/// decomposition).
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A statistic is mathematically undefined for the given input, e.g. a
/// correlation with a zero-variance argument.
class UndefinedError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace edgerec
