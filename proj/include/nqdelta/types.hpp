#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nqd {

using Index = std::int64_t;

/// Scalar arithmetic mode. Exact mode uses arbitrary-precision rationals,
/// float mode uses IEEE doubles. The two never mix inside one computation.
enum class Mode { exact, floating };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

// Error hierarchy. Each class maps to a distinct CLI exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed input (JSON syntax, unknown kinds, bad field types)
struct ParseError : Error {
    using Error::Error;
};

// structurally valid input that violates a domain invariant
// (nonpositive weights, bad policy, empty explicit sequence, ...)
struct ValidationError : Error {
    using Error::Error;
};

// mixing exact and float scalars in one operation
struct ModeMismatchError : ValidationError {
    ModeMismatchError() : ValidationError("cannot mix exact and float scalars in one computation") {}
};

// (domain, codomain) pair outside the supported class table
struct UnsupportedClassError : Error {
    using Error::Error;
};

// runtime math failures: singular triangle, divergent row sum, division by zero
struct ComputeError : Error {
    using Error::Error;
};

struct SingularTriangleError : ComputeError {
    Index index;
    explicit SingularTriangleError(Index n)
        : ComputeError("triangle is singular: zero diagonal entry at index " + std::to_string(n)),
          index(n) {}
};

struct DivergentRowSumError : ComputeError {
    Index row;
    explicit DivergentRowSumError(Index n)
        : ComputeError("row sum diverges beyond the policy threshold at row " + std::to_string(n)),
          row(n) {}
};

} // namespace nqd
