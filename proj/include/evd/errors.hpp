#pragma once

#include <stdexcept>
#include <string>

namespace evd {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroMatrix : Error {
    ZeroMatrix() : Error("matrix is identically zero; scaling factor undefined") {}
};

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& msg) : Error(msg) {}
};

struct NotPSD : Error {
    explicit NotPSD(const std::string& msg) : Error(msg) {}
};

struct InsufficientRows : Error {
    InsufficientRows() : Error("covariance needs at least two observations") {}
};

struct DivideByZero : Error {
    DivideByZero() : Error("fixed-point division by zero mantissa") {}
};

struct NegativeSqrt : Error {
    explicit NegativeSqrt(double v)
        : Error("fixed-point sqrt of negative operand " + std::to_string(v)) {}
};

struct LengthMismatch : Error {
    LengthMismatch() : Error("spectra have different lengths") {}
};

struct AllZero : Error {
    AllZero() : Error("eigenvalue sum is zero; variance fractions undefined") {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};

struct NoScaleFactor : Error {
    NoScaleFactor() : Error("model carries no scale factor; nothing to recover") {}
};

struct UnboundedRange : Error {
    UnboundedRange() : Error("integer word length undefined for an unbounded range") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace evd
