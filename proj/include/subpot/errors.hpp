#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subpot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand shapes disagree (jet dimensions, vector lengths, grid axes).
struct DimensionError : Error {
    using Error::Error;
};

/// A function was evaluated outside its real domain (ln of a nonpositive
/// value, division by zero, fractional power of a negative base).
struct DomainError : Error {
    using Error::Error;
};

/// Lexical or syntactic error in an expression, with a 0-based source offset.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), message(what),
          position(position) {}
    std::string message; // without the offset suffix
    std::size_t position;
};

/// Malformed or incomplete spec file.
struct SchemaError : Error {
    using Error::Error;
};

/// A spec violates one of its declared invariants.
struct ValidationError : Error {
    using Error::Error;
};

/// det g or det h vanished at an analyzed point.
struct DegeneracyError : Error {
    using Error::Error;
};

/// The tangent/normal frame is singular or ill-conditioned.
struct NonisotropyError : Error {
    using Error::Error;
};

/// Frame integration was aborted (gate failure, drift, bad step).
struct IntegrationError : Error {
    using Error::Error;
};

} // namespace subpot
