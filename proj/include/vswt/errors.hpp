#pragma once

#include <stdexcept>

namespace vswt {

/// An operation was called outside its precondition (e.g. wind speed <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Non-finite state, failed convergence or a torque-conversion guard tripped.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vswt
