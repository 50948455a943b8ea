#ifndef TORIC_ERROR_HPP
#define TORIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace toric {

/// Malformed input: bad JSON, wrong arity, floats where integers are expected.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed data that fails a mathematical requirement
/// (not smooth, not a fan, not complete, divisor not ample, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two computations that must agree did not. Always a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace toric

#endif
