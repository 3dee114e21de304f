#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

// Bad arguments: generator out of range, malformed spec, wrong dimension.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Refusal to materialize something larger than the configured vertex cap.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation hit a state that should not occur for valid inputs
// (representative-dependent counts, a pole in a Möbius inverse, ...).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cayley
