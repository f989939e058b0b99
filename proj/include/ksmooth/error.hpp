#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksmooth {

enum class ErrorKind {
    NotSymmetric,
    NotFullDimensional,
    ScopeExceeded,
    DimensionMismatch,
    NotUnitVector,
    ZeroOperator,
    UnsupportedSpacePair,
    ShapeMismatch,
    WrongSpaces,
    NotNormalized,
    NotUnitNorm,
    NoGap,
    GenerationExhausted,
    UnknownTheorem,
    ModeMismatch,
    ParseError,
    ValidationError,
    Internal,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind; the CLI
// maps kinds onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ksmooth
