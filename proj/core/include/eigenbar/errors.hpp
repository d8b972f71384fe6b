#pragma once

#include <stdexcept>
#include <string>

namespace eigenbar {

// Bad caller-supplied argument (out-of-range parameter, malformed input file).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The input violates a documented precondition of the operation (e.g. tied values
// where a simple field is required, or a level that is a vertex value).
class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class RegularValueViolation : public PreconditionViolation {
public:
    using PreconditionViolation::PreconditionViolation;
};

// The operation is not defined for this kind of input (e.g. sampling a field on a
// surface without chart coordinates).
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Object used before initialisation.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Broken internal invariant; carries a diagnostic.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] void throw_invalid(const std::string& what);

}  // namespace eigenbar
