#pragma once

#include <stdexcept>
#include <string>

namespace kronecker {

/// Input that violates a documented precondition (zero vector, resonant flow, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structured input that does not match the expected schema.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input whose values break an invariant (a_1 != 1, negative weight, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the class of structures this library can treat exactly.
class UnsupportedStructure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kronecker
