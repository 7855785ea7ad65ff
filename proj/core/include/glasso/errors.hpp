#pragma once

#include <stdexcept>

namespace glasso {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg: an iterative eigenvalue estimate failed to settle within its sweep budget
struct NoConvergence : Error {
    using Error::Error;
};

// solvers: S[i][i] + alpha <= 0 makes the diagonal initializer undefined
struct NonPositiveDiagonal : Error {
    using Error::Error;
};

// problems
struct DensityUnreachable : Error {
    using Error::Error;
};
struct ZeroVariance : Error {
    using Error::Error;
};

// io
struct ParseError : Error {
    using Error::Error;
};
struct AsymmetricInput : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct RaggedRows : Error {
    using Error::Error;
};
struct EmptyFile : Error {
    using Error::Error;
};
struct SerializationError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace glasso
