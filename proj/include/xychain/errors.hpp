#pragma once

#include <stdexcept>
#include <string>

namespace xychain {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape or size of an input does not match what the operation requires.
struct DimensionError : Error {
    using Error::Error;
};

// Block structure of a triangular site matrix is inconsistent.
struct StructureError : Error {
    using Error::Error;
};

// Operation requires a canonical MPO and the input is not in canonical form.
struct StateError : Error {
    using Error::Error;
};

// A density-matrix factor is not normalized (or not Hermitian).
struct NormalizationError : Error {
    using Error::Error;
};

// Input is degenerate for the requested operation (e.g. zero-norm MPO).
struct DegenerateInputError : Error {
    using Error::Error;
};

// Drift matrix is not strictly stable; the Lyapunov equation has no
// unique stationary solution.
struct StabilityError : Error {
    using Error::Error;
};

// Guard against dense blow-up (to_dense / dense Liouvillian size limits).
struct SizeError : Error {
    using Error::Error;
};

// An evolution produced non-finite values and was aborted.
struct NumericalAbort : Error {
    using Error::Error;
};

// Invalid experiment configuration or observable expression.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace xychain
